//! A commutative algebra over an imperfect field acting faithfully and
//! uniserially with no single generator.
//!
//! Over F = F_p(t) the element a = t has no p-th root, so f = X^p − t is
//! irreducible.  With C its companion matrix, build 2p×2p matrices in p×p
//! blocks:
//!
//! ```text
//! D = [C 0; 0 C],    E = [0 I; 0 0],    B = D + E.
//! ```
//!
//! The algebra A generated by D and E is commutative of dimension 2p with
//! basis {D^i, D^i·E}, and V = F^{2p} is a faithful uniserial A-module: the
//! only proper nonzero invariant subspace is W = im E = ker E, on which —
//! and on V/W — D acts with irreducible minimal polynomial f.  Yet no
//! single x ∈ A generates: writing x = Σ αᵢD^i + Σ βᵢD^iE, the identities
//! E² = 0, D^p = t·I and commutativity give x^p = (Σ αᵢ^p t^i)·I, so
//! F[x] has dimension at most p < 2p.
//!
//! The engine of the failure is Jordan–Chevalley non-uniqueness: B = D + E
//! with E ≠ 0 nilpotent and D annihilated by the irreducible f, but also
//! B = B + 0 with min_poly(B) = f itself — two valid decompositions, which
//! is impossible over a perfect field.  Accordingly, the crate's own
//! decomposition routine refuses B with an imperfect-field error, and that
//! refusal is part of the certificate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::Certificate;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::linalg::{jordan_chevalley, kernel, min_poly_matrix, Mat, Subspace};
use crate::modstruct::algebra_closure;
use crate::poly::Poly;

/// A built instance together with its certificate.
#[derive(Clone, Debug)]
pub struct MentiInstance {
    pub p: u64,
    /// F = F_p(t).
    pub field: Field,
    /// a = t, the chosen element without a p-th root.
    pub a: FieldElement,
    /// f = X^p − t.
    pub f: Poly,
    pub d: Mat,
    pub e: Mat,
    /// B = D + E.
    pub b: Mat,
    /// W = im E = ker E, the unique proper nonzero invariant subspace.
    pub w: Subspace,
    pub certificate: Certificate,
}

pub fn build_menti(p: u64, seed: u64) -> Result<MentiInstance> {
    if p != 2 && p != 3 {
        return Err(Error::Shape(format!(
            "exact function-field elimination is kept at p ∈ {{2, 3}}; got {p}"
        )));
    }
    let prime = Field::prime(p)?;
    let field = Field::rational_functions(&prime)?;
    let a = field.t()?;
    let np = p as usize;
    let n = 2 * np;
    let mut cert = Certificate::default();

    // f = X^p − t is irreducible exactly because t has no p-th root.
    cert.push(
        "no_pth_root",
        matches!(a.pth_root(), Err(Error::NoPthRoot { .. })),
        format!("t has no {p}-th root in {field}, so X^{p} − t is irreducible"),
    );
    let mut fc = vec![field.zero(); np + 1];
    fc[0] = -&a;
    fc[np] = field.one();
    let f = Poly::from_coeffs(&field, fc)?;

    let c = Mat::companion(&f)?;
    let mut d = Mat::zeros(&field, n, n);
    let mut e = Mat::zeros(&field, n, n);
    for i in 0..np {
        for j in 0..np {
            d.set(i, j, c.at(i, j).clone());
            d.set(np + i, np + j, c.at(i, j).clone());
        }
        e.set(i, np + i, field.one());
    }
    let b = &d + &e;
    let scaled_identity = Mat::identity(&field, n).scale(&a);

    // The defining identities, checked entrywise.
    cert.push("e_squared_zero", (&e * &e).is_zero(), "E² = 0");
    cert.push(
        "d_power_scalar",
        d.pow(p as u32) == scaled_identity,
        format!("D^{p} = t·I"),
    );
    cert.push("commutation", &d * &e == &e * &d, "D·E = E·D");
    cert.push(
        "b_power_scalar",
        b.pow(p as u32) == scaled_identity,
        format!("B^{p} = (D+E)^{p} = D^{p} + E^{p} = t·I"),
    );
    cert.push(
        "b_min_poly",
        min_poly_matrix(&b)? == f,
        format!("minimal polynomial of B is {f}"),
    );
    cert.push(
        "d_min_poly",
        min_poly_matrix(&d)? == f,
        format!("minimal polynomial of D is {f}"),
    );

    // The algebra: dimension 2p, with the announced monomial basis.
    let algebra = algebra_closure(&[d.clone(), e.clone()])?;
    cert.push(
        "algebra_dimension",
        algebra.dim() == n,
        format!("the algebra generated by D and E has dimension {}", algebra.dim()),
    );
    let mut monomials = Vec::new();
    let mut power = Mat::identity(&field, n);
    for _ in 0..np {
        monomials.push(power.flatten());
        monomials.push((&power * &e).flatten());
        power = &power * &d;
    }
    let independent =
        Subspace::from_vectors(&field, n * n, monomials).dim() == n;
    cert.push(
        "monomial_basis",
        independent,
        format!("the 2p matrices D^i·E^j (i < {p}, j ≤ 1) are linearly independent"),
    );

    // W = im E = ker E: invariant of dimension p, and both W and V/W are
    // acted on through the same irreducible f — E vanishes there and D
    // restricts with minimal polynomial f.  Any invariant U with
    // U ∩ W = 0 has E·U ⊆ U ∩ im E = 0, so U ⊆ ker E = W, forcing U = 0:
    // the invariant subspaces form the single chain 0 ⊂ W ⊂ V.
    let image = Subspace::from_vectors(
        &field,
        n,
        (0..n).map(|j| e.col(j)).collect(),
    );
    let kernel_space = Subspace::from_vectors(&field, n, kernel(&e));
    let w = image.clone();
    cert.push(
        "image_equals_kernel",
        image == kernel_space && w.dim() == np,
        format!("im E = ker E has dimension {p}"),
    );
    cert.push(
        "socle_invariant",
        w.is_invariant_under(&d) && w.is_invariant_under(&e),
        "W is invariant under D and E",
    );
    let d_on_w = w.restriction_of(&d)?;
    let d_on_quot = w.quotient_action_of(&d)?;
    cert.push(
        "layers_through_f",
        min_poly_matrix(&d_on_w)? == f
            && min_poly_matrix(&d_on_quot)? == f
            && w.restriction_of(&e)?.is_zero()
            && w.quotient_action_of(&e)?.is_zero(),
        "D acts on W and on V/W with minimal polynomial f; E acts as zero on both",
    );

    // No single generator: x^p is scalar for every x ∈ A, so
    // dim F[x] ≤ p < 2p.  The identity follows from the certified relations
    // plus commutativity; it is additionally spot-checked on random
    // coefficient tuples with rational-function entries.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scalar_law = true;
    let mut bounded = true;
    for _ in 0..50 {
        let mut x = Mat::zeros(&field, n, n);
        let mut expected = field.zero();
        let mut tpow = field.one();
        let mut power = Mat::identity(&field, n);
        for _ in 0..np {
            let alpha = field.sample(&mut rng);
            let beta = field.sample(&mut rng);
            x = &x + &power.scale(&alpha);
            x = &x + &(&power * &e).scale(&beta);
            expected = &expected + &(&alpha.pow(p) * &tpow);
            tpow = &tpow * &a;
            power = &power * &d;
        }
        scalar_law &= x.pow(p as u32) == Mat::identity(&field, n).scale(&expected);
        bounded &= min_poly_matrix(&x)?.degree().unwrap_or(0) <= np;
    }
    cert.push(
        "power_scalar_law",
        scalar_law,
        format!("x^{p} = (Σ αᵢ^{p} t^i)·I on 50 random elements of the algebra"),
    );
    cert.push(
        "no_single_generator",
        bounded,
        format!("dim F[x] ≤ {p} < {n} for every sampled x; the identity set forces it for all x"),
    );

    // Two Jordan–Chevalley decompositions of B, and the refusal of the
    // generic routine.
    let two_decompositions = b == &d + &e
        && &d * &e == &e * &d
        && (&e * &e).is_zero()
        && !e.is_zero()
        && min_poly_matrix(&d)? == f
        && min_poly_matrix(&b)? == f;
    cert.push(
        "two_decompositions",
        two_decompositions,
        "B = D + E (E ≠ 0 nilpotent, commuting, D annihilated by irreducible f) \
         and B = B + 0 are both valid decompositions",
    );
    cert.push(
        "decomposition_refused",
        matches!(jordan_chevalley(&b), Err(Error::ImperfectField { .. })),
        "the decomposition routine refuses B over the imperfect field",
    );

    Ok(MentiInstance {
        p,
        field,
        a,
        f,
        d,
        e,
        b,
        w,
        certificate: cert,
    })
}

// ---- registry adapter ----

pub struct Menti;

impl crate::constructions::Construction for Menti {
    fn name(&self) -> &'static str {
        "menti"
    }

    fn summary(&self) -> &'static str {
        "a commutative algebra over F_p(t) acting faithfully and uniserially \
         with no single generator (Jordan–Chevalley uniqueness fails)"
    }

    fn build(
        &self,
        params: &crate::constructions::BuildParams,
    ) -> Result<(Vec<(String, String)>, Certificate)> {
        let inst = build_menti(params.p, params.seed)?;
        let facts = vec![
            ("p".to_string(), inst.p.to_string()),
            ("field".to_string(), inst.field.to_string()),
            ("f".to_string(), inst.f.to_string()),
            ("matrix_size".to_string(), (2 * inst.p).to_string()),
            ("socle_dimension".to_string(), inst.w.dim().to_string()),
        ];
        Ok((facts, inst.certificate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_instance() {
        let inst = build_menti(2, 0).unwrap();
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
        // D² = t·I₄ from the block structure.
        let scaled = Mat::identity(&inst.field, 4).scale(&inst.a);
        assert_eq!(inst.d.pow(2), scaled);
        assert_eq!(inst.b.pow(2), scaled);
        assert_eq!(inst.w.dim(), 2);
        assert_eq!(inst.f.degree(), Some(2));
    }

    #[test]
    fn characteristic_three_instance() {
        let inst = build_menti(3, 1).unwrap();
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
        assert_eq!(inst.w.dim(), 3);
    }

    #[test]
    fn unsupported_characteristic_is_rejected() {
        assert!(build_menti(5, 0).is_err());
    }
}
