//! Structure theory of a module over a commutative matrix algebra: closure,
//! nilradical, socle series, irreducibility, uniseriality, residue degree.
//!
//! The algebra A is given by commuting square generators acting on V = F^n.
//! Everything downstream of the socle needs Jordan–Chevalley decompositions,
//! so the socle machinery refuses imperfect coefficient fields outright —
//! over such fields "the" semisimple part is not well defined and a silently
//! wrong filtration would be worse than an error.
//!
//! Certificates: every boolean answer is backed by a checkable witness — a
//! single generator with irreducible minimal polynomial of full degree on
//! the positive side, a proper invariant subspace or a zero divisor on the
//! negative side.

use crate::error::{Error, Result};
use crate::fields::{zp, Field, FieldElement};
use crate::linalg::{
    self, apply_poly, jordan_chevalley, kernel, min_poly_matrix, vec_add, vec_is_zero, vec_scale,
    Mat, Subspace,
};
use crate::poly::{self, Poly};

// ---- the algebra ----

/// A unital commutative algebra of endomorphisms of F^dim_v, with a fixed
/// linear basis obtained by closing the generators under multiplication.
#[derive(Clone)]
pub struct CommAlgebra {
    field: Field,
    dim_v: usize,
    generators: Vec<Mat>,
    basis: Vec<Mat>,
    /// Echelonized flattened basis rows, for membership tests.
    ech: Vec<Vec<FieldElement>>,
}

impl CommAlgebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Dimension of the module V the algebra acts on.
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Linear dimension of the algebra itself.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn contains(&self, m: &Mat) -> bool {
        if m.rows() != self.dim_v || m.cols() != self.dim_v || m.field() != &self.field {
            return false;
        }
        let mut rows = self.ech.clone();
        rows.push(m.flatten());
        let before = self.ech.len();
        rref_rows(&mut rows);
        rows.len() == before
    }
}

impl std::fmt::Debug for CommAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CommAlgebra(dim {} on F^{} over {})",
            self.dim(),
            self.dim_v,
            self.field.descriptor()
        )
    }
}

/// Echelonize flattened-matrix rows in place (via the subspace machinery,
/// which keeps a reduced row echelon basis).
fn rref_rows(rows: &mut Vec<Vec<FieldElement>>) {
    let dim = rows.first().map_or(0, |r| r.len());
    if dim == 0 {
        rows.clear();
        return;
    }
    let field = rows[0][0].field().clone();
    let s = Subspace::from_vectors(&field, dim, std::mem::take(rows));
    *rows = s.basis().to_vec();
}

/// Close a commuting generator set into a unital algebra basis.
///
/// Verifies pairwise commutativity first (the offending pair is named in the
/// error), then grows the linear span by multiplying basis elements until it
/// stabilizes.  The identity is always included.
pub fn algebra_closure(gens: &[Mat]) -> Result<CommAlgebra> {
    let first = gens.first().ok_or_else(|| {
        Error::Shape("an algebra needs at least one generator".into())
    })?;
    if !first.is_square() {
        return Err(Error::Shape("generators must be square".into()));
    }
    let n = first.rows();
    let field = first.field().clone();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_square() || g.rows() != n {
            return Err(Error::Shape(format!(
                "generator {i} is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        if g.field() != &field {
            return Err(Error::FieldMismatch {
                expected: field.descriptor().to_string(),
                found: g.field().descriptor().to_string(),
            });
        }
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !gens[i].commutes_with(&gens[j]) {
                return Err(Error::NonCommutingGenerators { i, j });
            }
        }
    }

    let mut basis: Vec<Mat> = Vec::new();
    let mut ech: Vec<Vec<FieldElement>> = Vec::new();
    let insert = |basis: &mut Vec<Mat>, ech: &mut Vec<Vec<FieldElement>>, m: &Mat| -> bool {
        let mut rows = ech.clone();
        rows.push(m.flatten());
        rref_rows(&mut rows);
        if rows.len() > ech.len() {
            *ech = rows;
            basis.push(m.clone());
            true
        } else {
            false
        }
    };
    insert(&mut basis, &mut ech, &Mat::identity(&field, n));
    for g in gens {
        insert(&mut basis, &mut ech, g);
    }
    // Multiply until the span stabilizes; products of earlier basis elements
    // are visited breadth-first so the basis order is deterministic.
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let prod = f * g;
                if insert(&mut basis, &mut ech, &prod) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    Ok(CommAlgebra { field, dim_v: n, generators: gens.to_vec(), basis, ech })
}

// ---- nilradical ----

/// Basis of the ideal of nilpotent elements.
///
/// Over a perfect field the Jordan–Chevalley nilpotent part a ↦ n_a is an
/// additive projection of the (commutative) algebra onto its nilradical:
/// commuting semisimple parts sum to a semisimple element and commuting
/// nilpotents to a nilpotent one, so uniqueness forces
/// n_{a+b} = n_a + n_b.  The span of the basis images is therefore the whole
/// nilradical.
pub fn nilradical(a: &CommAlgebra) -> Result<Vec<Mat>> {
    if !a.field.is_perfect() {
        return Err(Error::ImperfectField {
            op: "nilradical".into(),
            field: a.field.descriptor().to_string(),
        });
    }
    let mut out: Vec<Mat> = Vec::new();
    let mut ech: Vec<Vec<FieldElement>> = Vec::new();
    for b in &a.basis {
        let jc = jordan_chevalley(b)?;
        if jc.n.is_zero() {
            continue;
        }
        let mut rows = ech.clone();
        rows.push(jc.n.flatten());
        rref_rows(&mut rows);
        if rows.len() > ech.len() {
            ech = rows;
            out.push(jc.n);
        }
    }
    Ok(out)
}

// ---- socle ----

/// Soc(V) for the full module; see [`socle_of`].
pub fn socle(a: &CommAlgebra) -> Result<Subspace> {
    socle_of(a, &Subspace::full(&a.field, a.dim_v))
}

/// The socle of an invariant subspace U: the largest submodule of U on
/// which every generator acts semisimply, computed as
/// ⋂_g ker(sf_g(g|_U)) with sf_g the squarefree part of the minimal
/// polynomial of g restricted to U.
///
/// Over a perfect field an element is semisimple iff its squarefree-part
/// annihilates it, and a commutative algebra whose generators act
/// semisimply acts semisimply; that closure property is what makes the
/// generator-only intersection correct.
pub fn socle_of(a: &CommAlgebra, u: &Subspace) -> Result<Subspace> {
    if !a.field.is_perfect() {
        return Err(Error::ImperfectField {
            op: "socle".into(),
            field: a.field.descriptor().to_string(),
        });
    }
    if u.ambient() != a.dim_v {
        return Err(Error::Shape(format!(
            "subspace of F^{} fed to an algebra on F^{}",
            u.ambient(),
            a.dim_v
        )));
    }
    if u.is_zero() {
        return Ok(u.clone());
    }
    let mut acc = u.clone();
    for g in &a.generators {
        let r = u.restriction_of(g)?; // NotInvariant surfaces here
        let sf = poly::squarefree_part(&min_poly_matrix(&r)?)?;
        let ker_rows = kernel(&apply_poly(&sf, &r));
        // Kernel vectors are in U-coordinates; lift along U's basis.
        let lifted: Vec<Vec<FieldElement>> = ker_rows
            .iter()
            .map(|c| {
                let mut v = vec![a.field.zero(); a.dim_v];
                for (ci, bi) in c.iter().zip(u.basis()) {
                    if !ci.is_zero() {
                        v = vec_add(&v, &vec_scale(bi, ci));
                    }
                }
                v
            })
            .collect();
        let w = Subspace::from_vectors(&a.field, a.dim_v, lifted);
        acc = acc.intersect(&w);
    }
    Ok(acc)
}

// ---- socle chain ----

/// The ascending filtration 0 = W₀ ⊂ W₁ ⊂ … ⊂ W_ℓ = V where each quotient
/// W_{i+1}/W_i is the socle of V/W_i.
#[derive(Clone, Debug)]
pub struct SocleChain {
    /// W₀ … W_ℓ in ambient coordinates, strictly increasing.
    pub chain: Vec<Subspace>,
    /// dim(W_{i+1}) − dim(W_i), one entry per layer.
    pub layer_dims: Vec<usize>,
}

impl SocleChain {
    pub fn length(&self) -> usize {
        self.layer_dims.len()
    }
}

pub fn socle_chain(a: &CommAlgebra) -> Result<SocleChain> {
    let mut chain = vec![Subspace::zero(&a.field, a.dim_v)];
    let mut layer_dims = Vec::new();
    loop {
        let w = chain.last().unwrap().clone();
        if w.is_full() {
            break;
        }
        let next = if w.is_zero() {
            socle(a)?
        } else {
            // Quotient action on the complement coordinates, socle there,
            // then lift back and enlarge W.
            let q_gens: Vec<Mat> = a
                .generators
                .iter()
                .map(|g| w.quotient_action_of(g))
                .collect::<Result<_>>()?;
            let qa = algebra_closure(&q_gens)?;
            let qs = socle(&qa)?;
            let mut vecs: Vec<Vec<FieldElement>> =
                qs.basis().iter().map(|v| w.lift_from_quotient(v)).collect();
            vecs.extend(w.basis().iter().cloned());
            Subspace::from_vectors(&a.field, a.dim_v, vecs)
        };
        if next.dim() <= w.dim() {
            return Err(Error::Internal(
                "socle of a nonzero quotient came out zero".into(),
            ));
        }
        layer_dims.push(next.dim() - w.dim());
        chain.push(next);
    }
    Ok(SocleChain { chain, layer_dims })
}

// ---- field test ----

/// Outcome of the single-generator field test, with a checkable witness
/// either way.
#[derive(Clone, Debug)]
pub enum FieldCheck {
    /// Some z ∈ B has irreducible minimal polynomial of degree dim B, so
    /// B = F[z] ≅ F[X]/(min_poly) is a field.
    Field { generator: Mat, min_poly: Poly },
    /// A singular nonzero element of B; a field has none.
    NotField { zero_divisor: Mat },
}

/// Decide whether the algebra is a field, by hunting for a single generator
/// with irreducible minimal polynomial of full degree.
///
/// Search order: fold the generators into a linear combination, sweeping
/// one coefficient per step (this is the primitive-element strategy, with
/// the sweep provably sufficient once |F| exceeds the number of distinct
/// prime factors of dim B minus one); if the fold stalls, fall back to
/// exhaustive enumeration over small finite fields, or to direct zero-
/// divisor extraction over the rationals.
pub fn is_field(b: &CommAlgebra) -> Result<FieldCheck> {
    let field = &b.field;
    let dim = b.dim();
    if dim == 1 {
        let id = Mat::identity(field, b.dim_v);
        return Ok(FieldCheck::Field {
            generator: id.clone(),
            min_poly: min_poly_matrix(&id)?,
        });
    }

    // A basis element with a non-squarefree minimal polynomial hands us a
    // nilpotent witness immediately (over perfect fields); do this first so
    // the positive sweep never wastes time on visibly non-reduced algebras.
    if field.is_perfect() {
        for e in &b.basis {
            let m = min_poly_matrix(e)?;
            let sf = poly::squarefree_part(&m)?;
            if sf != m {
                let n = apply_poly(&sf, e);
                // (sf(e)) is nilpotent and nonzero since deg sf < deg m.
                debug_assert!(!n.is_zero());
                return Ok(FieldCheck::NotField { zero_divisor: n });
            }
        }
    }

    // Positive path: fold generators pairwise, sweeping the coefficient on
    // the incoming generator.
    if let Some(z) = fold_generators(b)? {
        let m = min_poly_matrix(&z)?;
        if m.degree() == Some(dim) && irreducible_over(&m)? {
            return Ok(FieldCheck::Field { generator: z, min_poly: m });
        }
    }

    // Negative paths.
    if field.is_finite() {
        let count = field.element_count().ok_or_else(|| Error::GuardExceeded {
            what: "field-test enumeration".into(),
            limit: ENUM_LIMIT,
            actual: u64::MAX,
        })?;
        let total = (count as u128).pow(dim as u32);
        if total > ENUM_LIMIT as u128 {
            return Err(Error::GuardExceeded {
                what: "field-test enumeration".into(),
                limit: ENUM_LIMIT,
                actual: u64::MAX,
            });
        }
        // Walk all of B: if any element generates, B is a field; otherwise
        // produce a singular nonzero element, which must exist.
        let mut witness = None;
        for idx in 0..total as u64 {
            let z = element_from_index(b, idx, count);
            if z.is_zero() {
                continue;
            }
            let m = min_poly_matrix(&z)?;
            if m.degree() == Some(dim) && irreducible_over(&m)? {
                return Ok(FieldCheck::Field { generator: z, min_poly: m });
            }
            if witness.is_none() && linalg::rank(&z) < b.dim_v {
                // Not invertible as an operator on the faithful module, so
                // not invertible in B: a zero divisor.
                witness = Some(z);
            }
        }
        if let Some(z) = witness {
            return Ok(FieldCheck::NotField { zero_divisor: z });
        }
        return Err(Error::Internal(
            "no generator and no zero divisor after full enumeration".into(),
        ));
    }

    // Rationals: coprime splitting of some basis element's minimal
    // polynomial yields an idempotent (hence a zero divisor).  Squarefree
    // minimal polynomials split either at a rational root or between
    // multiplicity classes.
    for e in &b.basis {
        let m = min_poly_matrix(e)?;
        if m.degree() == Some(1) {
            continue;
        }
        if let Some((u, v)) = coprime_split(&m)? {
            // 1 = αu + βv; e_idem = (βv)(e) is idempotent, nontrivial.
            let (g, _alpha, beta) = poly::poly_ext_gcd(&u, &v);
            if !g.is_one() {
                continue;
            }
            let idem = apply_poly(&(&beta * &v).rem(&m)?, e);
            let id = Mat::identity(field, b.dim_v);
            if !idem.is_zero() && idem != id {
                // idem·(1−idem) = 0 with both factors nonzero.
                debug_assert_eq!(&idem * &idem, idem);
                return Ok(FieldCheck::NotField { zero_divisor: idem });
            }
        }
    }
    Err(Error::Unsupported(format!(
        "field test inconclusive over {} at dimension {dim}: no generating \
         combination found and no splitting witness extracted",
        field.descriptor()
    )))
}

const ENUM_LIMIT: u64 = 1 << 16;

/// Irreducibility over the algebra's coefficient field, dispatching between
/// the finite-field test and the bounded rational decider.
pub(crate) fn irreducible_over(m: &Poly) -> Result<bool> {
    if m.field().is_finite() {
        poly::is_irreducible(m)
    } else {
        poly::q_irreducible(m)
    }
}

/// Fold the generators into a single candidate z = g₁ + α₂g₂ + …, sweeping
/// each α so the running element generates the pair algebra at every step.
/// Returns None when some sweep stalls (possible only for non-fields or
/// fields smaller than the primitive-element bound).
pub(crate) fn fold_generators(b: &CommAlgebra) -> Result<Option<Mat>> {
    let field = &b.field;
    let mut cur = b.generators[0].clone();
    for g in &b.generators[1..] {
        let pair = algebra_closure(&[cur.clone(), g.clone()])?;
        let target = pair.dim();
        if min_poly_matrix(&cur)?.degree() == Some(target) {
            continue; // g already lies in F[cur]
        }
        let mut found = false;
        for alpha in coefficient_stream(field, b.dim() + 2) {
            let z = &cur + &g.scale(&alpha);
            if min_poly_matrix(&z)?.degree() == Some(target) {
                cur = z;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(cur))
}

/// Nonzero sweep coefficients: every nonzero element of a small finite
/// field, or the integers of height ≤ h over the rationals.
pub(crate) fn coefficient_stream(field: &Field, h: usize) -> Vec<FieldElement> {
    if let Some(count) = field.element_count() {
        let cap = count.min(4096);
        (1..cap).map(|i| field.element_at(i)).collect()
    } else {
        let mut out = Vec::with_capacity(2 * h);
        for i in 1..=(h as i64) {
            out.push(field.int(i));
            out.push(field.int(-i));
        }
        out
    }
}

/// The idx-th element of the algebra under base-|F| digit enumeration of
/// basis coefficients.
fn element_from_index(b: &CommAlgebra, idx: u64, count: u64) -> Mat {
    let mut z = Mat::zeros(&b.field, b.dim_v, b.dim_v);
    let mut rest = idx;
    for e in &b.basis {
        let c = b.field.element_at(rest % count);
        rest /= count;
        if !c.is_zero() {
            z = &z + &e.scale(&c);
        }
    }
    z
}

/// A coprime factorization m = u·v with both parts nonconstant, if one is
/// reachable without factoring: split off a rational root, or split between
/// multiplicity classes of the squarefree decomposition.
fn coprime_split(m: &Poly) -> Result<Option<(Poly, Poly)>> {
    let field = m.field();
    // Multiplicity-class split: gcd(m, m') shares exactly the repeated part.
    let d = poly::poly_gcd(m, &m.derivative());
    if let Some(dd) = d.degree() {
        if dd >= 1 && dd < m.degree().unwrap() {
            // Separate the repeated factors (inside d, completed to full
            // multiplicity) from the simple ones.
            let repeated = poly::poly_gcd(&d.pow(m.degree().unwrap() as u32), m);
            let simple = m.exact_div(&repeated)?;
            if simple.degree().map_or(false, |n| n >= 1)
                && repeated.degree().map_or(false, |n| n >= 1)
                && poly::poly_gcd(&simple, &repeated).is_one()
            {
                return Ok(Some((simple, repeated)));
            }
        }
    }
    // Rational-root split of a squarefree polynomial.
    if field.descriptor() == &crate::fields::FieldDescriptor::Rationals {
        for denom in 1i64..=6 {
            for numer in -24i64..=24 {
                let r = field.int(numer).div(&field.int(denom)).expect("denom nonzero");
                if m.eval(&r).is_zero() {
                    let lin = &Poly::x(field) - &Poly::constant(r);
                    let rest = m.exact_div(&lin)?;
                    if rest.degree().map_or(false, |n| n >= 1)
                        && poly::poly_gcd(&lin, &rest).is_one()
                    {
                        return Ok(Some((lin, rest)));
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---- irreducibility of a submodule ----

/// Outcome of the irreducibility test for an invariant subspace, with the
/// witness promised by the theory: a field generator on success, a proper
/// nonzero invariant subspace on failure.
#[derive(Clone, Debug)]
pub enum IrreducibilityCheck {
    /// The restricted algebra B = A|_W is a field of dimension dim W; the
    /// generator is given in W-coordinates.
    Irreducible { generator: Mat, min_poly: Poly },
    /// A proper nonzero invariant subspace of W, in ambient coordinates.
    Reducible { proper: Subspace },
}

/// Is W irreducible as a module over the (commutative) algebra?  True iff
/// the restriction algebra B has dim B = dim W and is a field.
pub fn is_irreducible_module(a: &CommAlgebra, w: &Subspace) -> Result<IrreducibilityCheck> {
    if w.is_zero() {
        return Err(Error::Shape("irreducibility concerns nonzero subspaces".into()));
    }
    let restrictions: Vec<Mat> = a
        .generators
        .iter()
        .map(|g| w.restriction_of(g))
        .collect::<Result<_>>()?;
    let b = algebra_closure(&restrictions)?;
    let dw = w.dim();
    if b.dim() == dw {
        if let FieldCheck::Field { generator, min_poly } = is_field(&b)? {
            return Ok(IrreducibilityCheck::Irreducible { generator, min_poly });
        }
    }
    // Reducible: surface a proper invariant subspace.  If the algebra is
    // smaller than the space, any cyclic orbit B·v is proper; otherwise the
    // zero divisor z gives the proper invariant image z·W.
    let proper_in_w = if b.dim() < dw {
        let v = linalg::std_basis_vector(&a.field, dw, 0);
        let orbit: Vec<Vec<FieldElement>> = b.basis().iter().map(|e| e.mul_vec(&v)).collect();
        Subspace::from_vectors(&a.field, dw, orbit)
    } else {
        match is_field(&b)? {
            FieldCheck::NotField { zero_divisor } => {
                let cols: Vec<Vec<FieldElement>> =
                    (0..dw).map(|j| zero_divisor.col(j)).collect();
                Subspace::from_vectors(&a.field, dw, cols)
            }
            FieldCheck::Field { .. } => {
                return Err(Error::Internal(
                    "restriction algebra is a field of full dimension yet not irreducible".into(),
                ))
            }
        }
    };
    if proper_in_w.is_zero() || proper_in_w.dim() >= dw {
        return Err(Error::Internal("reducibility witness is not proper".into()));
    }
    // Lift from W-coordinates to ambient coordinates.
    let ambient_vecs: Vec<Vec<FieldElement>> = proper_in_w
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![a.field.zero(); a.dim_v];
            for (ci, bi) in c.iter().zip(w.basis()) {
                if !ci.is_zero() {
                    v = vec_add(&v, &vec_scale(bi, ci));
                }
            }
            v
        })
        .collect();
    Ok(IrreducibilityCheck::Reducible {
        proper: Subspace::from_vectors(&a.field, a.dim_v, ambient_vecs),
    })
}

// ---- uniseriality ----

/// Positive certificate: the socle chain together with a per-layer field
/// generator.
#[derive(Clone, Debug)]
pub struct LayerCertificate {
    /// Generator of the layer's restriction algebra, in layer coordinates.
    pub generator: Mat,
    pub min_poly: Poly,
}

#[derive(Clone, Debug)]
pub enum UniserialCheck {
    /// Every socle-chain layer is irreducible; submodules are totally
    /// ordered.
    Uniserial {
        chain: SocleChain,
        layers: Vec<LayerCertificate>,
    },
    /// Some layer splits; the witness is an invariant subspace strictly
    /// between two chain members (ambient coordinates), so the submodules
    /// are not totally ordered.
    NotUniserial {
        chain: SocleChain,
        layer: usize,
        witness: Subspace,
    },
}

impl UniserialCheck {
    pub fn is_uniserial(&self) -> bool {
        matches!(self, UniserialCheck::Uniserial { .. })
    }

    pub fn chain(&self) -> &SocleChain {
        match self {
            UniserialCheck::Uniserial { chain, .. } => chain,
            UniserialCheck::NotUniserial { chain, .. } => chain,
        }
    }
}

/// Decide uniseriality: compute the socle chain and check that every layer
/// is irreducible over the algebra.  A module is uniserial exactly when its
/// submodules are totally ordered by inclusion; irreducible socle layers
/// are equivalent to that (each quotient then has a unique minimal
/// submodule, and induction climbs the chain).
pub fn is_uniserial(a: &CommAlgebra) -> Result<UniserialCheck> {
    if a.dim_v == 0 {
        return Err(Error::Shape("uniseriality concerns nonzero modules".into()));
    }
    let chain = socle_chain(a)?;
    let mut layers = Vec::with_capacity(chain.length());
    for i in 0..chain.length() {
        let w = &chain.chain[i];
        // The layer W_{i+1}/W_i, inside the quotient by W_i.
        let (q_gens, layer_sub): (Vec<Mat>, Subspace) = if w.is_zero() {
            (a.generators.clone(), chain.chain[i + 1].clone())
        } else {
            let q_gens: Vec<Mat> = a
                .generators
                .iter()
                .map(|g| w.quotient_action_of(g))
                .collect::<Result<_>>()?;
            let free_dim = w.complement_indices().len();
            let imgs: Vec<Vec<FieldElement>> = chain.chain[i + 1]
                .basis()
                .iter()
                .map(|v| {
                    let red = w.reduce(v);
                    let free = w.complement_indices();
                    free.iter().map(|&fi| red[fi].clone()).collect()
                })
                .collect();
            (q_gens, Subspace::from_vectors(&a.field, free_dim, imgs))
        };
        let qa = algebra_closure(&q_gens)?;
        match is_irreducible_module(&qa, &layer_sub)? {
            IrreducibilityCheck::Irreducible { generator, min_poly } => {
                layers.push(LayerCertificate { generator, min_poly });
            }
            IrreducibilityCheck::Reducible { proper } => {
                // Lift the quotient-level witness back to ambient: its
                // preimage together with W_i sits strictly between chain
                // members.
                let mut vecs: Vec<Vec<FieldElement>> = proper
                    .basis()
                    .iter()
                    .map(|qv| w.lift_from_quotient(qv))
                    .collect();
                vecs.extend(w.basis().iter().cloned());
                let witness = Subspace::from_vectors(&a.field, a.dim_v, vecs);
                return Ok(UniserialCheck::NotUniserial { chain, layer: i, witness });
            }
        }
    }
    Ok(UniserialCheck::Uniserial { chain, layers })
}

// ---- residue degree ----

/// Dimension of the algebra's action on the socle (= the degree of the
/// residue field over F for a faithful uniserial module), together with the
/// number of distinct prime factors of that dimension.
pub fn residue_degree(a: &CommAlgebra) -> Result<(usize, usize)> {
    match is_uniserial(a)? {
        UniserialCheck::Uniserial { .. } => {}
        UniserialCheck::NotUniserial { .. } => return Err(Error::NotUniserial),
    }
    let s = socle(a)?;
    let restrictions: Vec<Mat> = a
        .generators
        .iter()
        .map(|g| s.restriction_of(g))
        .collect::<Result<_>>()?;
    let b = algebra_closure(&restrictions)?;
    let d = b.dim();
    let n_primes = zp::prime_factors(d as u64).len();
    Ok((d, n_primes))
}

// ---- brute-force enumeration (oracle support) ----

/// All subspaces of F^n invariant under every generator, by breadth-first
/// span growth from single vectors.  Only practical over small finite
/// fields; the cap bounds the number of vectors enumerated (errors beyond).
pub fn enumerate_invariant_subspaces(gens: &[Mat], cap: u64) -> Result<Vec<Subspace>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Shape("need at least one generator".into()))?;
    let field = first.field().clone();
    let n = first.rows();
    let count = field.element_count().ok_or_else(|| Error::NotFinite {
        op: "subspace enumeration".into(),
        field: field.descriptor().to_string(),
    })?;
    let total = (count as u128).pow(n as u32);
    if total > cap as u128 {
        return Err(Error::GuardExceeded {
            what: "subspace enumeration".into(),
            limit: cap,
            actual: total.min(u64::MAX as u128) as u64,
        });
    }
    // All vectors of F^n.
    let mut vectors = Vec::with_capacity(total as usize);
    for idx in 0..total as u64 {
        let mut v = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            v.push(field.element_at(rest % count));
            rest /= count;
        }
        if !vec_is_zero(&v) {
            vectors.push(v);
        }
    }
    // Breadth-first closure of spans under "adjoin one more vector".
    let mut all: Vec<Subspace> = vec![Subspace::zero(&field, n)];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for v in &vectors {
                if s.contains(v) {
                    continue;
                }
                let mut vecs = s.basis().to_vec();
                vecs.push(v.clone());
                let bigger = Subspace::from_vectors(&field, n, vecs);
                if !all.contains(&bigger) && !next.contains(&bigger) {
                    next.push(bigger);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all
        .into_iter()
        .filter(|s| gens.iter().all(|g| s.is_invariant_under(g)))
        .collect())
}

// ---- tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn q() -> Field {
        Field::rationals()
    }

    fn companion_algebra(f: &Poly) -> CommAlgebra {
        algebra_closure(&[Mat::companion(f).unwrap()]).unwrap()
    }

    fn block_diag(a: &Mat, b: &Mat) -> Mat {
        let field = a.field().clone();
        let n = a.rows() + b.rows();
        let mut m = Mat::zeros(&field, n, n);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.set(i, j, a.at(i, j).clone());
            }
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(a.rows() + i, a.cols() + j, b.at(i, j).clone());
            }
        }
        m
    }

    #[test]
    fn closure_pinned_examples() {
        let q = q();
        let a = algebra_closure(&[Mat::identity(&q, 3)]).unwrap();
        assert_eq!(a.dim(), 1);

        let f2 = f2();
        let f = Poly::from_ints(&f2, &[1, 1, 0, 0, 1]);
        let c = Mat::companion(&f).unwrap();
        let a = algebra_closure(&[c.clone()]).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.contains(&c.pow(3)));
        assert!(a.contains(&Mat::identity(&f2, 4)));

        let e12 = Mat::from_ints(&f2, &[&[0, 1], &[0, 0]]);
        let e21 = Mat::from_ints(&f2, &[&[0, 0], &[1, 0]]);
        assert!(matches!(
            algebra_closure(&[e12, e21]),
            Err(Error::NonCommutingGenerators { i: 0, j: 1 })
        ));
    }

    #[test]
    fn nilradical_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);

        // A field: no nilpotents.
        let a = companion_algebra(&p);
        assert!(nilradical(&a).unwrap().is_empty());

        // One Jordan block J_2(0): the nilradical is its own span.
        let q = q();
        let j = Mat::from_ints(&q, &[&[0, 1], &[0, 0]]);
        let a = algebra_closure(&[j.clone()]).unwrap();
        let nr = nilradical(&a).unwrap();
        assert_eq!(nr.len(), 1);
        assert!((&nr[0] * &nr[0]).is_zero());

        // F[companion(p²)]: everything returned is nilpotent and the
        // quotient has dimension deg p.
        let a = companion_algebra(&p.pow(2));
        let nr = nilradical(&a).unwrap();
        for x in &nr {
            assert!(x.pow(4).is_zero(), "nilradical element is nilpotent");
        }
        assert_eq!(a.dim() - nr.len(), 2, "quotient dimension equals deg p");
    }

    #[test]
    fn nilpotent_part_is_additive_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        for field in [f2(), Field::prime(5).unwrap(), q()] {
            let f = Poly::from_ints(&field, &[1, 1, 1]);
            let a = companion_algebra(&(&f * &Poly::from_ints(&field, &[1, 1])));
            for _ in 0..10 {
                let x = random_algebra_element(&a, &mut rng);
                let y = random_algebra_element(&a, &mut rng);
                let nx = jordan_chevalley(&x).unwrap().n;
                let ny = jordan_chevalley(&y).unwrap().n;
                let nxy = jordan_chevalley(&(&x + &y)).unwrap().n;
                assert_eq!(nxy, &nx + &ny, "n_(a+b) = n_a + n_b");
            }
        }
    }

    fn random_algebra_element<R: Rng>(a: &CommAlgebra, rng: &mut R) -> Mat {
        let mut z = Mat::zeros(a.field(), a.dim_v(), a.dim_v());
        for e in a.basis() {
            let c = a.field().sample(rng);
            if !c.is_zero() {
                z = &z + &e.scale(&c);
            }
        }
        z
    }

    #[test]
    fn socle_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);

        // Semisimple action: the socle is everything.
        let a = companion_algebra(&p);
        assert!(socle(&a).unwrap().is_full());

        // companion(p²): the socle is ker p(C) of dimension deg p.
        let c = Mat::companion(&p.pow(2)).unwrap();
        let a = companion_algebra(&p.pow(2));
        let s = socle(&a).unwrap();
        assert_eq!(s.dim(), 2);
        let expected = Subspace::from_vectors(&f2, 4, kernel(&apply_poly(&p, &c)));
        assert_eq!(s, expected);
        assert!(s.is_invariant_under(&c));

        // The zero subspace is its own socle.
        let z = Subspace::zero(&f2, 4);
        assert!(socle_of(&a, &z).unwrap().is_zero());

        // Imperfect fields are refused.
        let kt = Field::rational_functions(&f2).unwrap();
        let t = kt.t().unwrap();
        let mut m = Mat::zeros(&kt, 2, 2);
        m.set(0, 1, t);
        m.set(1, 0, kt.one());
        let a_t = algebra_closure(&[m]).unwrap();
        assert!(matches!(socle(&a_t), Err(Error::ImperfectField { .. })));
    }

    #[test]
    fn socle_chain_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);
        let chain = socle_chain(&companion_algebra(&p.pow(3))).unwrap();
        assert_eq!(chain.layer_dims, vec![2, 2, 2]);
        assert_eq!(chain.chain.first().unwrap().dim(), 0);
        assert!(chain.chain.last().unwrap().is_full());

        let chain = socle_chain(&companion_algebra(&p)).unwrap();
        assert_eq!(chain.length(), 1);

        // Jordan block J_4(0) over the rationals: four one-dimensional layers.
        let q = q();
        let j = Mat::companion(&Poly::from_ints(&q, &[0, 0, 0, 0, 1])).unwrap();
        let chain = socle_chain(&algebra_closure(&[j]).unwrap()).unwrap();
        assert_eq!(chain.layer_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn irreducible_module_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);
        let c = Mat::companion(&p.pow(2)).unwrap();
        let a = companion_algebra(&p.pow(2));

        let w = Subspace::from_vectors(&f2, 4, kernel(&apply_poly(&p, &c)));
        match is_irreducible_module(&a, &w).unwrap() {
            IrreducibilityCheck::Irreducible { generator, min_poly } => {
                assert_eq!(min_poly, p);
                assert_eq!(min_poly_matrix(&generator).unwrap(), p);
            }
            other => panic!("expected irreducible, got {other:?}"),
        }

        let v = Subspace::full(&f2, 4);
        match is_irreducible_module(&a, &v).unwrap() {
            IrreducibilityCheck::Reducible { proper } => {
                assert!(proper.dim() > 0 && proper.dim() < 4);
                assert!(a.generators().iter().all(|g| proper.is_invariant_under(g)));
            }
            other => panic!("expected reducible, got {other:?}"),
        }

        // One-dimensional subspaces are always irreducible.
        let q = q();
        let d = Mat::from_ints(&q, &[&[1, 0], &[0, 2]]);
        let a = algebra_closure(&[d]).unwrap();
        let line = Subspace::from_vectors(&q, 2, vec![linalg::std_basis_vector(&q, 2, 0)]);
        assert!(matches!(
            is_irreducible_module(&a, &line).unwrap(),
            IrreducibilityCheck::Irreducible { .. }
        ));
    }

    #[test]
    fn is_field_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);

        // F_2[companion(X²+X+1)] is the field with four elements.
        match is_field(&companion_algebra(&p)).unwrap() {
            FieldCheck::Field { min_poly, .. } => assert_eq!(min_poly, p),
            other => panic!("expected field, got {other:?}"),
        }

        // Two copies of F_4 with a splitting idempotent: 16 elements, not a
        // field, and no element has a degree-4 irreducible minimal
        // polynomial.
        let c = Mat::companion(&p).unwrap();
        let cc = block_diag(&c, &c);
        let split = block_diag(&Mat::identity(&f2, 2), &Mat::zeros(&f2, 2, 2));
        let b = algebra_closure(&[cc, split]).unwrap();
        assert_eq!(b.dim(), 4);
        match is_field(&b).unwrap() {
            FieldCheck::NotField { zero_divisor } => {
                assert!(!zero_divisor.is_zero());
                assert!(linalg::rank(&zero_divisor) < 4);
                assert!(b.contains(&zero_divisor));
            }
            other => panic!("expected non-field, got {other:?}"),
        }

        // F·I is a field.
        let q = q();
        assert!(matches!(
            is_field(&algebra_closure(&[Mat::identity(&q, 3)]).unwrap()).unwrap(),
            FieldCheck::Field { .. }
        ));

        // Q[diag(1,2)] ≅ Q × Q: detected through the idempotent split.
        let d = Mat::from_ints(&q, &[&[1, 0], &[0, 2]]);
        match is_field(&algebra_closure(&[d]).unwrap()).unwrap() {
            FieldCheck::NotField { zero_divisor } => {
                assert!(!zero_divisor.is_zero());
                assert!(linalg::rank(&zero_divisor) < 2);
            }
            other => panic!("expected non-field, got {other:?}"),
        }

        // Q[J_2(0)] has a nilpotent.
        let j = Mat::from_ints(&q, &[&[0, 1], &[0, 0]]);
        match is_field(&algebra_closure(&[j]).unwrap()).unwrap() {
            FieldCheck::NotField { zero_divisor } => {
                assert!((&zero_divisor * &zero_divisor).is_zero());
            }
            other => panic!("expected non-field, got {other:?}"),
        }

        // Q[companion(X²+1)] ≅ Q(i) is a field.
        assert!(matches!(
            is_field(&companion_algebra(&Poly::from_ints(&q, &[1, 0, 1]))).unwrap(),
            FieldCheck::Field { .. }
        ));
    }

    #[test]
    fn is_uniserial_pinned_examples() {
        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]);

        for l in 1..=3u32 {
            let check = is_uniserial(&companion_algebra(&p.pow(l))).unwrap();
            match &check {
                UniserialCheck::Uniserial { chain, layers } => {
                    assert_eq!(chain.length(), l as usize);
                    assert_eq!(layers.len(), l as usize);
                    for lc in layers {
                        assert_eq!(lc.min_poly, p, "every layer acts through p");
                    }
                }
                other => panic!("expected uniserial, got {other:?}"),
            }
        }

        // Two equal blocks: socle is everything and splits.
        let c = Mat::companion(&p).unwrap();
        let a = algebra_closure(&[block_diag(&c, &c)]).unwrap();
        match is_uniserial(&a).unwrap() {
            UniserialCheck::NotUniserial { layer, witness, .. } => {
                assert_eq!(layer, 0);
                assert!(witness.dim() > 0 && witness.dim() < 4);
                assert!(a.generators().iter().all(|g| witness.is_invariant_under(g)));
            }
            other => panic!("expected non-uniserial, got {other:?}"),
        }

        // Distinct irreducibles: also splits.
        let pq = Poly::from_ints(&f2, &[1, 1, 0, 1]); // X^3+X+1
        let a = algebra_closure(&[block_diag(&c, &Mat::companion(&pq).unwrap())]).unwrap();
        assert!(!is_uniserial(&a).unwrap().is_uniserial());
    }

    #[test]
    fn residue_degree_pinned_examples() {
        let f2 = f2();
        let p2 = Poly::from_ints(&f2, &[1, 1, 1]);
        let a = companion_algebra(&p2.pow(3));
        assert_eq!(residue_degree(&a).unwrap(), (2, 1));

        // deg p = 6 → two distinct primes; build p irreducible of degree 6.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p6 = crate::poly::random_irreducible(&f2, 6, &mut rng).unwrap();
        let a = companion_algebra(&p6);
        assert_eq!(residue_degree(&a).unwrap(), (6, 2));

        // deg p = 1 → zero prime factors.
        let q = q();
        let lin = Poly::from_ints(&q, &[3, 1]);
        let a = companion_algebra(&lin.pow(2));
        assert_eq!(residue_degree(&a).unwrap(), (1, 0));

        // Non-uniserial input is an error.
        let c = Mat::companion(&p2).unwrap();
        let bad = algebra_closure(&[block_diag(&c, &c)]).unwrap();
        assert!(matches!(residue_degree(&bad), Err(Error::NotUniserial)));
    }

    #[test]
    fn brute_force_oracle_agreement_small() {
        let f2 = f2();
        let mut rng = ChaCha8Rng::seed_from_u64(211);
        for round in 0..30 {
            let n = 2 + round % 2; // dimensions 2 and 3
            // Random commuting set: polynomials in one random matrix.
            let mut m = Mat::zeros(&f2, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, f2.sample(&mut rng));
                }
            }
            let g1 = m.clone();
            let g2 = apply_poly(&Poly::from_ints(&f2, &[1, 0, 1]), &m);
            let a = algebra_closure(&[g1.clone(), g2.clone()]).unwrap();

            let subs = enumerate_invariant_subspaces(&[g1, g2], 1 << 12).unwrap();
            // Total order by inclusion?
            let mut oracle = true;
            for x in &subs {
                for y in &subs {
                    if !x.contains_subspace(y) && !y.contains_subspace(x) {
                        oracle = false;
                    }
                }
            }
            assert_eq!(
                is_uniserial(&a).unwrap().is_uniserial(),
                oracle,
                "oracle disagreement at round {round}"
            );

            // Socle oracle: sum of minimal invariant subspaces.
            let mut minimal_sum = Subspace::zero(&f2, n);
            for x in &subs {
                if x.is_zero() {
                    continue;
                }
                let is_minimal = subs
                    .iter()
                    .all(|y| y.is_zero() || !x.contains_subspace(y) || y == x);
                if is_minimal {
                    minimal_sum = minimal_sum.sum(x);
                }
            }
            assert_eq!(socle(&a).unwrap(), minimal_sum, "socle oracle at round {round}");
        }
    }
}
