//! Single-generator extraction for uniserial commutative matrix algebras.
//!
//! When a commutative algebra A of matrices acts uniserially (the invariant
//! subspaces form one chain) and the coefficient field is perfect, A is
//! generated by a single matrix u whose minimal polynomial is a prime power
//! p^ℓ of degree dim V.  This module makes that constructive:
//!
//!   - [`find_single_generator`] produces u together with the shape (p, ℓ),
//!     by recursion on the socle filtration.
//!   - [`find_combination_generator`] searches for a generator that is an
//!     F-linear combination of the *input* generators.  A combination always
//!     exists when |F| > N − 1 (N = number of relevant primes in the residue
//!     degree); over smaller fields the search can exhaust, which is reported
//!     as `None`, not as an error.
//!   - [`analyze`] runs the whole pipeline — closure, uniseriality
//!     certificate, generator extraction, companion form, polynomial
//!     expressions for every input — and bundles it into a
//!     [`UniserialReport`].
//!
//! Invariants maintained throughout:
//!   - every returned generator u satisfies deg(min_poly(u)) = dim V and
//!     min_poly(u) = p^ℓ with p irreducible and ℓ the socle-chain length;
//!   - combination results are full-length coefficient vectors over the
//!     input generators (zero entries allowed: a redundant generator may
//!     contribute nothing, and over very small fields a combination with all
//!     coefficients nonzero need not exist at all);
//!   - internal contradictions with the underlying theory (e.g. a lift that
//!     is neither cyclic nor one step short at chain length 2) surface as
//!     `Error::Internal` rather than being silently patched.

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::linalg::{jordan_chevalley, min_poly_matrix, solve, to_companion_basis, Mat, Subspace};
use crate::modstruct::{
    algebra_closure, coefficient_stream, irreducible_over, is_field, is_uniserial, nilradical,
    residue_degree, socle, socle_chain, CommAlgebra, FieldCheck, SocleChain, UniserialCheck,
};
use crate::poly::{prime_power_shape, Poly};

// ---- report type ----

/// How the generator list should be read.  An abelian Lie algebra of
/// matrices is exactly a commuting set, so both modes run the same pipeline;
/// the distinction is kept for interface clarity and input validation
/// wording.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Associative,
    Lie,
}

/// Everything [`analyze`] learns about one commuting family of matrices.
///
/// For a uniserial action the `Option` fields are all populated except
/// possibly `combination` (absent when the coefficient sweep exhausts over a
/// too-small field) and the witness pair (absent: there is nothing to
/// refute).  For a non-uniserial action only `socle_chain`, `length` and the
/// witness pair are populated.
#[derive(Clone, Debug)]
pub struct UniserialReport {
    /// Whether the invariant subspaces form a single chain.
    pub uniserial: bool,
    /// Composition length ℓ = number of socle layers.
    pub length: usize,
    /// The full socle filtration 0 ⊂ Soc(V) ⊂ Soc²(V) ⊂ … ⊂ V.
    pub socle_chain: SocleChain,
    /// A single matrix generating the whole algebra, when uniserial.
    pub generator: Option<Mat>,
    /// (p, ℓ) with min_poly(generator) = p^ℓ, p irreducible.
    pub shape: Option<(Poly, u32)>,
    /// Change of basis P with P⁻¹·u·P = companion(p^ℓ).
    pub companion_basis: Option<Mat>,
    /// Polynomial h_i with gens[i] = h_i(u), in input order.
    pub expressions: Option<Vec<Poly>>,
    /// Coefficients c_i with Σ c_i·gens[i] a single generator, if found.
    pub combination: Option<Vec<FieldElement>>,
    /// (d, N): dimension of the residue field over F and the number of its
    /// distinct prime divisors.
    pub residue_degree: Option<(usize, usize)>,
    /// For a non-uniserial action: a proper nonzero invariant subspace of
    /// the offending layer, lifted to the ambient space.
    pub witness: Option<Subspace>,
    /// Index of the socle layer the witness lives in.
    pub witness_layer: Option<usize>,
}

// ---- single generator ----

/// Finds u with min_poly(u) = p^ℓ of degree dim V, so the algebra is F[u].
///
/// Recursion on the composition length: the induced algebra on V/Soc(V) has
/// length ℓ − 1; a generator there lifts to an element x of A whose minimal
/// polynomial is either p^ℓ (take u = x) or — only possible when ℓ = 2 —
/// p itself, in which case u = x + y for any nonzero element y of the
/// nilradical.  The ℓ = 1 base case is a field acting on itself; its
/// generator comes from the input list, the coefficient fold, or the field
/// certificate, in that order of preference.
///
/// Errors: `ImperfectField` (the socle and Jordan–Chevalley machinery need
/// p-th roots), `NotUniserial`, and `Internal` if the computed data ever
/// contradicts the structure theory (a non-cyclic lift away from length 2).
pub fn find_single_generator(a: &CommAlgebra) -> Result<(Mat, Poly, u32)> {
    if !a.field().is_perfect() {
        return Err(Error::ImperfectField {
            op: "find_single_generator".into(),
            field: a.field().descriptor().to_string(),
        });
    }
    if !is_uniserial(a)?.is_uniserial() {
        return Err(Error::NotUniserial);
    }
    let (u, p, l) = single_rec(a)?;
    verify_generator(a, &u, &p, l)?;
    Ok((u, p, l))
}

/// Postcondition battery shared by the public entry points: degree, shape,
/// chain length, socle dimension.
fn verify_generator(a: &CommAlgebra, u: &Mat, p: &Poly, l: u32) -> Result<()> {
    let m = min_poly_matrix(u)?;
    if m.degree() != Some(a.dim_v()) {
        return Err(Error::Internal(format!(
            "generator minimal polynomial has degree {:?}, expected {}",
            m.degree(),
            a.dim_v()
        )));
    }
    if m.monic() != p.pow(l) {
        return Err(Error::Internal(
            "generator minimal polynomial is not the expected prime power".into(),
        ));
    }
    let chain = socle_chain(a)?;
    if chain.length() != l as usize {
        return Err(Error::Internal(format!(
            "shape exponent {} disagrees with socle-chain length {}",
            l,
            chain.length()
        )));
    }
    let soc = socle(a)?;
    if Some(soc.dim()) != p.degree() {
        return Err(Error::Internal(format!(
            "socle dimension {} disagrees with irreducible degree {:?}",
            soc.dim(),
            p.degree()
        )));
    }
    Ok(())
}

fn single_rec(a: &CommAlgebra) -> Result<(Mat, Poly, u32)> {
    let w = socle(a)?;
    if w.is_full() {
        let (u, p) = base_generator(a)?;
        return Ok((u, p, 1));
    }

    // Length > 1: recurse on the induced algebra acting on V/Soc(V).
    let q_gens: Vec<Mat> = a
        .generators()
        .iter()
        .map(|g| w.quotient_action_of(g))
        .collect::<Result<_>>()?;
    let c = algebra_closure(&q_gens)?;
    let (x_bar, p, l_quot) = single_rec(&c)?;
    let l = l_quot + 1;
    let x = lift_element(a, &w, &x_bar)?;
    let m = min_poly_matrix(&x)?.monic();

    if m.degree() == Some(a.dim_v()) {
        // Case 1: the lift is already cyclic on V.
        if m != p.pow(l) {
            return Err(Error::Internal(
                "cyclic lift has the wrong minimal polynomial".into(),
            ));
        }
        return Ok((x, p, l));
    }

    // Case 2: the theory forces ℓ = 2 and min_poly(x) = p here.  Anything
    // else means the socle or closure computation is broken — fail loudly.
    if l != 2 || m != p {
        return Err(Error::Internal(format!(
            "non-cyclic lift at chain length {l} with minimal polynomial of degree {:?}",
            m.degree()
        )));
    }
    let nil = nilradical(a)?;
    let y = nil
        .first()
        .cloned()
        .ok_or_else(|| Error::Internal("length-2 algebra with zero nilradical".into()))?;
    let u = &x + &y;
    let mu = min_poly_matrix(&u)?.monic();
    if mu != p.pow(2) {
        return Err(Error::Internal(
            "semisimple lift plus nilradical element is not cyclic".into(),
        ));
    }
    Ok((u, p, 2))
}

/// Base case: the algebra is a field acting on a space of the same
/// dimension.  Prefer an input generator that is already cyclic (this keeps
/// the output equal to the input in the common single-generator case), then
/// the coefficient fold, then the field certificate.
fn base_generator(a: &CommAlgebra) -> Result<(Mat, Poly)> {
    let n = a.dim_v();
    for g in a.generators() {
        let m = min_poly_matrix(g)?.monic();
        if m.degree() == Some(n) && irreducible_over(&m)? {
            return Ok((g.clone(), m));
        }
    }
    if let Some(z) = crate::modstruct::fold_generators(a)? {
        let m = min_poly_matrix(&z)?.monic();
        if m.degree() == Some(n) && irreducible_over(&m)? {
            return Ok((z, m));
        }
    }
    match is_field(a)? {
        FieldCheck::Field {
            generator,
            min_poly,
        } => Ok((generator, min_poly)),
        FieldCheck::NotField { .. } => Err(Error::Internal(
            "irreducible faithful commutative action is not a field".into(),
        )),
    }
}

/// Any preimage of `x_bar` under the quotient map A → C.  Input generators
/// that map exactly onto `x_bar` are preferred; otherwise the coefficients
/// of `x_bar` over the quotient images of A's basis are solved for and
/// re-evaluated in A.
fn lift_element(a: &CommAlgebra, w: &Subspace, x_bar: &Mat) -> Result<Mat> {
    for g in a.generators() {
        if &w.quotient_action_of(g)? == x_bar {
            return Ok(g.clone());
        }
    }
    let field = a.field();
    let images: Vec<Mat> = a
        .basis()
        .iter()
        .map(|b| w.quotient_action_of(b))
        .collect::<Result<_>>()?;
    let flat: Vec<Vec<FieldElement>> = images.iter().map(|m| m.flatten()).collect();
    let rhs = x_bar.flatten();
    let rows: Vec<Vec<FieldElement>> = (0..rhs.len())
        .map(|r| flat.iter().map(|f| f[r].clone()).collect())
        .collect();
    let coeffs = solve(&Mat::from_rows(field, rows)?, &rhs)
        .map_err(|_| Error::Internal("quotient map of the algebra is not surjective".into()))?;
    let mut x = Mat::zeros(field, a.dim_v(), a.dim_v());
    for (c, b) in coeffs.iter().zip(a.basis()) {
        if !c.is_zero() {
            x = &x + &b.scale(c);
        }
    }
    Ok(x)
}

// ---- combination generator ----

/// Searches for coefficients c with Σ c_i·gens[i] a single generator of the
/// whole algebra, mirroring the recursion of [`find_single_generator`]: a
/// combination for the quotient action lifts directly (Case 1) or, at chain
/// length 2, gets one coefficient adjusted by a sweep over α so that the
/// adjusted element still generates the socle's residue field (Case 2).
///
/// Returns the full-length coefficient vector together with the combination
/// itself.  Zero entries are possible — a generator already contained in
/// the span of the others may be skipped, and over tiny fields no
/// all-nonzero combination need exist.  When every sweep candidate fails
/// (possible only when |F| ≤ N − 1) the result is `Ok(None)`.
pub fn find_combination_generator(
    a: &CommAlgebra,
    gens: &[Mat],
) -> Result<Option<(Vec<FieldElement>, Mat)>> {
    if !a.field().is_perfect() {
        return Err(Error::ImperfectField {
            op: "find_combination_generator".into(),
            field: a.field().descriptor().to_string(),
        });
    }
    if gens.is_empty() {
        return Err(Error::Shape("combination search needs generators".into()));
    }
    for (index, g) in gens.iter().enumerate() {
        if !a.contains(g) {
            return Err(Error::NotInGeneratedAlgebra { index });
        }
    }
    if algebra_closure(gens)?.dim() != a.dim() {
        return Err(Error::Shape(
            "the given matrices do not generate the algebra".into(),
        ));
    }
    if !is_uniserial(a)?.is_uniserial() {
        return Err(Error::NotUniserial);
    }

    let coeffs = match comb_rec(a, gens)? {
        Some(c) => c,
        None => match exhaustive_combination(a, gens)? {
            Some(c) => c,
            None => return Ok(None),
        },
    };
    let coeffs = repair_nonzero(a, gens, coeffs)?;
    let u = combine(a.field(), gens, &coeffs);
    let m = min_poly_matrix(&u)?.monic();
    if m.degree() != Some(a.dim_v()) {
        return Err(Error::Internal(
            "combination result fails the cyclicity check".into(),
        ));
    }
    if prime_power_shape(&m)?.is_none() {
        return Err(Error::Internal(
            "combination minimal polynomial is not a prime power".into(),
        ));
    }
    Ok(Some((coeffs, u)))
}

fn combine(field: &Field, gens: &[Mat], coeffs: &[FieldElement]) -> Mat {
    let n = gens[0].rows();
    let mut u = Mat::zeros(field, n, n);
    for (c, g) in coeffs.iter().zip(gens) {
        if !c.is_zero() {
            u = &u + &g.scale(c);
        }
    }
    u
}

/// True when Σ c_i·gens[i] generates the whole algebra.
fn generates(a: &CommAlgebra, gens: &[Mat], coeffs: &[FieldElement]) -> Result<bool> {
    let u = combine(a.field(), gens, coeffs);
    Ok(min_poly_matrix(&u)?.degree() == Some(a.dim()))
}

fn comb_rec(a: &CommAlgebra, gens: &[Mat]) -> Result<Option<Vec<FieldElement>>> {
    let w = socle(a)?;
    if w.is_full() {
        return comb_base(a, gens);
    }

    let q_gens: Vec<Mat> = gens
        .iter()
        .map(|g| w.quotient_action_of(g))
        .collect::<Result<_>>()?;
    let c = algebra_closure(&q_gens)?;
    let betas = match comb_rec(&c, &q_gens)? {
        Some(b) => b,
        None => return Ok(None),
    };
    let v = combine(a.field(), gens, &betas);
    let mv = min_poly_matrix(&v)?;
    if mv.degree() == Some(a.dim_v()) {
        // Case 1: the quotient combination is already cyclic on V.
        return Ok(Some(betas));
    }

    // Case 2: only possible at chain length 2, with min_poly(v) = p of
    // degree dim Soc(V).
    let dim_w = w.dim();
    if a.dim_v() != 2 * dim_w || mv.degree() != Some(dim_w) {
        return Err(Error::Internal(format!(
            "non-cyclic combination lift outside the length-2 case (degree {:?} in dimension {})",
            mv.degree(),
            a.dim_v()
        )));
    }

    // A non-semisimple input generator exists, else the algebra would be
    // semisimple and the chain would have length 1.
    let mut pick = None;
    for (i, g) in gens.iter().enumerate() {
        if !jordan_chevalley(g)?.n.is_zero() {
            pick = Some(i);
            break;
        }
    }
    let i = pick.ok_or_else(|| {
        Error::Internal("length-2 algebra with only semisimple generators".into())
    })?;
    let y = &gens[i];

    // Sweep α ≠ 0 until v + α·y generates the residue field on the socle;
    // the Jordan–Chevalley uniqueness argument then makes it cyclic on all
    // of V, which is verified rather than assumed.  Prefer an α that keeps
    // coefficient i nonzero; settle for a cancelling one if it is the only
    // choice.
    let mut cancelling: Option<Vec<FieldElement>> = None;
    for alpha in coefficient_stream(a.field(), a.dim_v() + 40) {
        let z = &v + &y.scale(&alpha);
        let zw = w.restriction_of(&z)?;
        if min_poly_matrix(&zw)?.degree() != Some(dim_w) {
            continue;
        }
        if min_poly_matrix(&z)?.degree() != Some(a.dim_v()) {
            return Err(Error::Internal(
                "socle generator fails to be cyclic on the whole space".into(),
            ));
        }
        let mut adjusted = betas.clone();
        adjusted[i] = &adjusted[i] + &alpha;
        if !adjusted[i].is_zero() {
            return Ok(Some(adjusted));
        }
        if cancelling.is_none() {
            cancelling = Some(adjusted);
        }
    }
    if let Some(c) = cancelling {
        return Ok(Some(c));
    }
    Ok(None)
}

/// Base case of the combination search: the algebra is a field.  Fold the
/// generators left to right; at each step the running combination either
/// already generates the pair algebra, is replaced outright by a generator
/// that does, or gets a swept multiple of the new generator added.  The
/// invariant is that the running element always equals Σ coeffs[j]·gens[j]
/// and generates the subalgebra of everything folded so far.
fn comb_base(a: &CommAlgebra, gens: &[Mat]) -> Result<Option<Vec<FieldElement>>> {
    let field = a.field();
    let mut coeffs = vec![field.zero(); gens.len()];
    let mut cur = gens[0].clone();
    coeffs[0] = field.one();
    for (j, g) in gens.iter().enumerate().skip(1) {
        let pair = algebra_closure(&[cur.clone(), g.clone()])?;
        let target = pair.dim();
        if min_poly_matrix(&cur)?.degree() == Some(target) {
            continue; // g is already a polynomial in the running element
        }
        if min_poly_matrix(g)?.degree() == Some(target) {
            // The running element is a polynomial in g: restart from g.
            for c in coeffs.iter_mut() {
                *c = field.zero();
            }
            coeffs[j] = field.one();
            cur = g.clone();
            continue;
        }
        let mut found = false;
        for alpha in coefficient_stream(field, a.dim() + 40) {
            let z = &cur + &g.scale(&alpha);
            if min_poly_matrix(&z)?.degree() == Some(target) {
                coeffs[j] = alpha;
                cur = z;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    if min_poly_matrix(&cur)?.degree() != Some(a.dim()) {
        return Err(Error::Internal(
            "generator fold lost the running-subalgebra invariant".into(),
        ));
    }
    Ok(Some(coeffs))
}

/// Last-resort search when the structured recursion exhausts: enumerate all
/// coefficient vectors over a small finite field.
fn exhaustive_combination(
    a: &CommAlgebra,
    gens: &[Mat],
) -> Result<Option<Vec<FieldElement>>> {
    let q = match a.field().element_count() {
        Some(q) => q,
        None => return Ok(None),
    };
    let n = gens.len() as u32;
    let total = match q.checked_pow(n) {
        Some(t) if t <= 4096 => t,
        _ => return Ok(None),
    };
    for idx in 0..total {
        let mut rest = idx;
        let coeffs: Vec<FieldElement> = (0..gens.len())
            .map(|_| {
                let c = a.field().element_at(rest % q);
                rest /= q;
                c
            })
            .collect();
        if generates(a, gens, &coeffs)? {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

/// Tries to clear zero entries from a working coefficient vector.
///
/// Over a small finite field the all-nonzero vectors are enumerated
/// outright, so failure proves no all-nonzero combination exists.  Over the
/// rationals (or a large finite field) each zero coordinate is perturbed
/// separately: the working vector stays working for all but finitely many
/// perturbations, so a short sweep always repairs it over Q.  If nothing
/// helps, the zeros stay — the vector is still a valid answer.
fn repair_nonzero(
    a: &CommAlgebra,
    gens: &[Mat],
    coeffs: Vec<FieldElement>,
) -> Result<Vec<FieldElement>> {
    if coeffs.iter().all(|c| !c.is_zero()) {
        return Ok(coeffs);
    }
    if let Some(q) = a.field().element_count() {
        let nz = q - 1;
        if let Some(total) = nz.checked_pow(gens.len() as u32) {
            if total <= 4096 {
                for idx in 0..total {
                    let mut rest = idx;
                    let cand: Vec<FieldElement> = (0..gens.len())
                        .map(|_| {
                            let c = a.field().element_at(1 + rest % nz);
                            rest /= nz;
                            c
                        })
                        .collect();
                    if generates(a, gens, &cand)? {
                        return Ok(cand);
                    }
                }
                // Proven: no all-nonzero combination generates.
                return Ok(coeffs);
            }
        }
    }
    // One coordinate at a time: candidate = current + t·e_j stays a
    // generator for all but deg-bounded many t, and t = 0 works.
    let mut cur = coeffs;
    for j in 0..gens.len() {
        if !cur[j].is_zero() {
            continue;
        }
        for t in coefficient_stream(a.field(), 100) {
            let mut cand = cur.clone();
            cand[j] = t;
            if generates(a, gens, &cand)? {
                cur = cand;
                break;
            }
        }
    }
    Ok(cur)
}

// ---- full pipeline ----

/// Runs closure → uniseriality certificate → single generator → combination
/// search → companion form → input expressions, tagging any error with the
/// stage it happened in.
///
/// Both modes perform the same computation: the associative closure of an
/// abelian Lie algebra's image is the same commutative matrix algebra, so
/// `Mode::Lie` differs only in how callers interpret the input list.
pub fn analyze(gens: &[Mat], _mode: Mode) -> Result<UniserialReport> {
    let a = algebra_closure(gens).map_err(|e| Error::staged("closure", e))?;
    match is_uniserial(&a).map_err(|e| Error::staged("uniseriality", e))? {
        UniserialCheck::NotUniserial {
            chain,
            layer,
            witness,
        } => Ok(UniserialReport {
            uniserial: false,
            length: chain.length(),
            socle_chain: chain,
            generator: None,
            shape: None,
            companion_basis: None,
            expressions: None,
            combination: None,
            residue_degree: None,
            witness: Some(witness),
            witness_layer: Some(layer),
        }),
        UniserialCheck::Uniserial { chain, .. } => {
            let (u, p, l) = find_single_generator(&a)
                .map_err(|e| Error::staged("single-generator", e))?;
            if chain.length() != l as usize {
                return Err(Error::Internal(
                    "shape exponent disagrees with socle-chain length".into(),
                ));
            }
            let combination = find_combination_generator(&a, gens)
                .map_err(|e| Error::staged("combination", e))?
                .map(|(coeffs, _)| coeffs);
            let (basis, expressions) = to_companion_basis(&u, gens)
                .map_err(|e| Error::staged("companion-form", e))?;
            let degree = residue_degree(&a).map_err(|e| Error::staged("residue-degree", e))?;
            Ok(UniserialReport {
                uniserial: true,
                length: chain.length(),
                socle_chain: chain,
                generator: Some(u),
                shape: Some((p, l)),
                companion_basis: Some(basis),
                expressions: Some(expressions),
                combination,
                residue_degree: Some(degree),
                witness: None,
                witness_layer: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::apply_poly;
    use crate::poly::random_irreducible;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn rationals() -> Field {
        Field::rationals()
    }

    /// x² + x + 1, the irreducible quadratic over F₂.
    fn quad(field: &Field) -> Poly {
        Poly::from_ints(field, &[1, 1, 1])
    }

    fn random_invertible(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        loop {
            let rows: Vec<Vec<FieldElement>> = (0..n)
                .map(|_| (0..n).map(|_| field.sample(rng)).collect())
                .collect();
            let m = Mat::from_rows(field, rows).unwrap();
            if crate::linalg::inverse(&m).is_ok() {
                return m;
            }
        }
    }

    fn conjugate(p: &Mat, g: &Mat) -> Mat {
        let p_inv = crate::linalg::inverse(p).unwrap();
        &(&p_inv * g) * p
    }

    #[test]
    fn single_generator_companion_is_case_one() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p.pow(2)).unwrap();
        let a = algebra_closure(std::slice::from_ref(&c)).unwrap();
        let (u, shape_p, l) = find_single_generator(&a).unwrap();
        assert_eq!(u, c, "a cyclic input generator should be returned as-is");
        assert_eq!(shape_p, p);
        assert_eq!(l, 2);

        // Dimension-1 base case over Q keeps the actual eigenvalue.
        let q = rationals();
        let scalar = Mat::from_ints(&q, &[&[3]]);
        let a1 = algebra_closure(std::slice::from_ref(&scalar)).unwrap();
        let (u1, p1, l1) = find_single_generator(&a1).unwrap();
        assert_eq!(u1, scalar);
        assert_eq!(p1, Poly::from_ints(&q, &[-3, 1]));
        assert_eq!(l1, 1);
    }

    #[test]
    fn single_generator_semisimple_plus_nilpotent_parts() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p.pow(2)).unwrap();
        let jc = jordan_chevalley(&c).unwrap();
        assert!(!jc.n.is_zero());
        // The semisimple part alone is not cyclic: its minimal polynomial is
        // p, so the recursion must take the nilradical-correction branch.
        assert_eq!(min_poly_matrix(&jc.s).unwrap(), p);
        let a = algebra_closure(&[jc.s.clone(), jc.n.clone()]).unwrap();
        let (u, shape_p, l) = find_single_generator(&a).unwrap();
        assert_eq!(shape_p, p);
        assert_eq!(l, 2);
        assert_eq!(min_poly_matrix(&u).unwrap(), p.pow(2));
        assert_ne!(u, jc.s);
    }

    #[test]
    fn single_generator_obfuscated_generating_set() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p.pow(3)).unwrap();
        let c2 = &c * &c;
        let c3c = &(&c2 * &c) + &c;
        let a = algebra_closure(&[c2, c3c]).unwrap();
        assert_eq!(a.dim(), 6, "the obfuscated set must generate everything");
        let (u, shape_p, l) = find_single_generator(&a).unwrap();
        assert_eq!(shape_p, p);
        assert_eq!(l, 3);
        assert_eq!(min_poly_matrix(&u).unwrap().degree(), Some(6));
    }

    #[test]
    fn combination_single_generator_is_identity_coefficient() {
        let field = f2();
        let c = Mat::companion(&quad(&field).pow(2)).unwrap();
        let gens = [c.clone()];
        let a = algebra_closure(&gens).unwrap();
        let (coeffs, u) = find_combination_generator(&a, &gens).unwrap().unwrap();
        assert_eq!(coeffs, vec![field.one()]);
        assert_eq!(u, c);
    }

    #[test]
    fn combination_of_semisimple_and_nilpotent_parts() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p.pow(2)).unwrap();
        let jc = jordan_chevalley(&c).unwrap();
        let gens = [jc.s.clone(), jc.n.clone()];
        let a = algebra_closure(&gens).unwrap();
        let (coeffs, u) = find_combination_generator(&a, &gens).unwrap().unwrap();
        assert!(coeffs.iter().all(|c| !c.is_zero()));
        assert_eq!(min_poly_matrix(&u).unwrap(), p.pow(2));
        // Over F₂ the only all-nonzero combination is s + n = c itself.
        assert_eq!(u, c);
    }

    #[test]
    fn combination_with_residue_degree_six() {
        let field = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_irreducible(&field, 6, &mut rng).unwrap();
        let c = Mat::companion(&p.pow(2)).unwrap();
        let jc = jordan_chevalley(&c).unwrap();
        let gens = [jc.s.clone(), jc.n.clone()];
        let a = algebra_closure(&gens).unwrap();
        // d = 6 has two prime divisors, so N = 2 and |F| = 2 > N − 1.
        assert_eq!(residue_degree(&a).unwrap(), (6, 2));
        let (coeffs, u) = find_combination_generator(&a, &gens).unwrap().unwrap();
        assert_eq!(min_poly_matrix(&u).unwrap().degree(), Some(12));
        assert_eq!(u, combine(&field, &gens, &coeffs));
    }

    #[test]
    fn analyze_jordan_block_over_the_rationals() {
        let q = rationals();
        let j = Mat::from_ints(
            &q,
            &[&[2, 1, 0, 0], &[0, 2, 1, 0], &[0, 0, 2, 1], &[0, 0, 0, 2]],
        );
        let gens = [j.clone()];
        let report = analyze(&gens, Mode::Associative).unwrap();
        assert!(report.uniserial);
        assert_eq!(report.length, 4);
        let (p, l) = report.shape.unwrap();
        assert_eq!(p, Poly::from_ints(&q, &[-2, 1]));
        assert_eq!(l, 4);
        let exprs = report.expressions.unwrap();
        assert_eq!(exprs, vec![Poly::x(&q)]);
        assert_eq!(apply_poly(&exprs[0], report.generator.as_ref().unwrap()), j);
        assert_eq!(report.combination.unwrap(), vec![q.one()]);
        assert_eq!(report.residue_degree.unwrap(), (1, 0));
    }

    #[test]
    fn analyze_rejects_direct_sum_with_witness() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p).unwrap();
        let mut block = Mat::zeros(&field, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                block.set(i, j, c.at(i, j).clone());
                block.set(2 + i, 2 + j, c.at(i, j).clone());
            }
        }
        let report = analyze(&[block], Mode::Associative).unwrap();
        assert!(!report.uniserial);
        assert!(report.generator.is_none());
        let witness = report.witness.unwrap();
        assert!(witness.dim() > 0 && witness.dim() < 4);
        assert_eq!(report.witness_layer, Some(0));
    }

    #[test]
    fn analyze_square_zero_radical_control() {
        // Two commuting matrices with a two-dimensional square-zero radical:
        // indecomposable but not uniserial, and reported as such.
        let field = f2();
        let mut e21 = Mat::zeros(&field, 3, 3);
        e21.set(1, 0, field.one());
        let mut e31 = Mat::zeros(&field, 3, 3);
        e31.set(2, 0, field.one());
        let report = analyze(&[e21, e31], Mode::Lie).unwrap();
        assert!(!report.uniserial);
        assert_eq!(report.socle_chain.layer_dims, vec![2, 1]);
    }

    #[test]
    fn analyze_obfuscated_conjugated_pair() {
        let field = f2();
        let p = quad(&field);
        let c = Mat::companion(&p.pow(2)).unwrap();
        let c2 = &c * &c;
        let c3c = &(&c2 * &c) + &c;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = random_invertible(&field, 4, &mut rng);
        let gens = [conjugate(&t, &c2), conjugate(&t, &c3c)];
        let report = analyze(&gens, Mode::Associative).unwrap();
        assert!(report.uniserial);
        assert_eq!(report.length, 2);
        let (shape_p, l) = report.shape.unwrap();
        assert_eq!((shape_p, l), (p, 2));
        let u = report.generator.unwrap();
        let exprs = report.expressions.unwrap();
        for (g, h) in gens.iter().zip(&exprs) {
            assert_eq!(&apply_poly(h, &u), g);
        }
    }

    #[test]
    fn analyze_round_trip_randomized() {
        // Random uniserial algebras in disguise: companion(p^ℓ), a random
        // generating set of polynomials in it, and a random change of basis.
        // The report must recover the shape and reproduce every input.
        let fields = [
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::finite(2, 2).unwrap(),
            Field::rationals(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        let mut seen_multi = 0usize;
        for round in 0..32 {
            let field = &fields[round % fields.len()];
            let deg = 1 + round % 2;
            let ell = 1 + (round / 4) % 2;
            let p = if field.is_finite() {
                random_irreducible(field, deg, &mut rng).unwrap()
            } else if deg == 1 {
                Poly::from_ints(field, &[rng.gen_range(-3..=3), 1])
            } else {
                Poly::from_ints(field, &[1, 1, 1]) // x² + x + 1, no rational root
            };
            let target = p.pow(ell as u32);
            let c = Mat::companion(&target).unwrap();
            let n = c.rows();
            let count = 1 + round % 3;
            let mut gens_raw = Vec::new();
            // Random polynomials in c that together generate F[c]: retry
            // until the closure has full dimension.
            loop {
                gens_raw.clear();
                for _ in 0..count {
                    let coeffs: Vec<FieldElement> =
                        (0..n).map(|_| field.sample(&mut rng)).collect();
                    let h = Poly::from_coeffs(field, coeffs).unwrap();
                    gens_raw.push(apply_poly(&h, &c));
                }
                if algebra_closure(&gens_raw).unwrap().dim() == n {
                    break;
                }
            }
            let t = random_invertible(field, n, &mut rng);
            let gens: Vec<Mat> = gens_raw.iter().map(|g| conjugate(&t, g)).collect();
            if count > 1 {
                seen_multi += 1;
            }

            let report = analyze(&gens, Mode::Associative).unwrap();
            assert!(report.uniserial, "round {round}: expected uniserial");
            assert_eq!(report.length, ell);
            let (shape_p, l) = report.shape.unwrap();
            // The reported irreducible need not be the constructed one (any
            // generator of the same algebra is fair game), but its degree is
            // an invariant: the dimension of the residue field.
            assert_eq!(shape_p.degree(), p.degree(), "round {round}");
            assert_eq!(l as usize, ell);
            let u = report.generator.unwrap();
            let mu = min_poly_matrix(&u).unwrap();
            assert_eq!(mu.degree(), Some(n));
            assert_eq!(mu, shape_p.pow(l), "round {round}: shape mismatch");
            assert_eq!(report.socle_chain.chain[1].dim(), deg);
            let exprs = report.expressions.unwrap();
            for (g, h) in gens.iter().zip(&exprs) {
                assert_eq!(&apply_poly(h, &u), g, "round {round}: expression mismatch");
            }
            // d ≤ 2 means N ≤ 1, so every field here satisfies |F| > N − 1
            // and a combination generator must exist.
            let coeffs = report.combination.expect("combination must exist");
            let z = combine(field, &gens, &coeffs);
            assert_eq!(min_poly_matrix(&z).unwrap().degree(), Some(n));
        }
        assert!(seen_multi >= 10, "random schedule lost its multi-generator rounds");
    }
}
