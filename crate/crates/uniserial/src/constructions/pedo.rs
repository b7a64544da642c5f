//! A degree-p² extension of F_{p²}(X) where combining two degree-p
//! elements can collapse back to degree p.
//!
//! Work in K = F[Z]/(Z^{p²} − Z − X) over F = E(X), E = F_{p²}, modeled as
//! the p²-dimensional F-algebra in which the coset α of Z acts through the
//! companion matrix of Z^{p²} − Z − X.  With a ∈ E ∖ F_p:
//!
//! ```text
//! x = α(α+1)⋯(α+(p−1))    = α^p − α,
//! y = α(α+a)⋯(α+(p−1)a)   = α^p − a^{p−1}α.
//! ```
//!
//! Both have degree p over F, with minimal polynomials Z^p + Z − X and
//! Z^p + a^{1−p}Z − X, and their subfields intersect trivially — yet the
//! degree of x + b·y over F depends on b: it stays p exactly when b is a
//! nonzero F_p-multiple of a, and jumps to p² for every other b ∈ E^×.
//!
//! Everything certified here is a degree computation valid in the quotient
//! ring itself (Krylov minimal polynomials over the function field), so
//! irreducibility of Z^{p²} − Z − X is never needed as an input.

use crate::constructions::Certificate;
use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::linalg::{apply_poly, min_poly_matrix, Mat};
use crate::poly::Poly;

/// A built instance together with its certificate.
#[derive(Clone, Debug)]
pub struct PedoInstance {
    pub p: u64,
    /// E = F_{p²}, the coefficient field of the base.
    pub base: Field,
    /// F = E(X); the function-field variable t plays the role of X.
    pub field: Field,
    /// The chosen generator a of E over F_p, as a constant of F.
    pub a: FieldElement,
    /// Multiplication by the coset α of Z: the companion matrix of
    /// Z^{p²} − Z − X acting on K ≅ F^{p²}.
    pub alpha: Mat,
    pub x: Mat,
    pub y: Mat,
    pub x_min: Poly,
    pub y_min: Poly,
    /// (b, deg(x + b·y)) for every b ∈ E^×.
    pub sweep: Vec<(FieldElement, usize)>,
    pub certificate: Certificate,
}

pub fn build_pedo(p: u64) -> Result<PedoInstance> {
    if p != 2 && p != 3 {
        return Err(Error::Shape(format!(
            "the quotient-ring model is kept at p ∈ {{2, 3}}; got {p}"
        )));
    }
    let base = Field::finite(p, 2)?;
    let field = Field::rational_functions(&base)?;
    let xvar = field.t()?;
    let a = field.base_generator()?;
    let n = (p * p) as usize;
    let mut cert = Certificate::default();

    // Z^{p²} − Z − X and the action of α on the quotient ring.
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[0] = -&xvar;
    coeffs[1] = -&field.one();
    coeffs[n] = field.one();
    let modulus = Poly::from_coeffs(&field, coeffs)?;
    let alpha = Mat::companion(&modulus)?;
    cert.push(
        "alpha_min_poly",
        min_poly_matrix(&alpha)?.degree() == Some(n),
        format!("α generates the full quotient ring of dimension {n}"),
    );

    let identity = Mat::identity(&field, n);
    let alpha_p = alpha.pow(p as u32);
    let x = &alpha_p - &alpha;
    let a_pm1 = a.pow(p - 1);
    let y = &alpha_p - &alpha.scale(&a_pm1);

    // The product formulas the power expressions came from.
    let mut x_product = alpha.clone();
    let mut y_product = alpha.clone();
    for j in 1..p {
        let j_const = field.int(j as i64);
        x_product = &x_product * &(&alpha + &identity.scale(&j_const));
        y_product = &y_product * &(&alpha + &identity.scale(&(&j_const * &a)));
    }
    cert.push(
        "x_product_formula",
        x_product == x,
        "α(α+1)⋯(α+(p−1)) = α^p − α",
    );
    cert.push(
        "y_product_formula",
        y_product == y,
        "α(α+a)⋯(α+(p−1)a) = α^p − a^{p−1}·α",
    );

    // Expected minimal polynomials, confirmed twice: by direct evaluation
    // and by the independent Krylov computation.
    let expect = |linear: FieldElement| -> Result<Poly> {
        let mut c = vec![field.zero(); p as usize + 1];
        c[0] = -&xvar;
        c[1] = linear;
        c[p as usize] = field.one();
        Poly::from_coeffs(&field, c)
    };
    let x_expected = expect(field.one())?;
    let y_expected = expect(a_pm1.inv()?)?;
    cert.push(
        "x_satisfies_expected",
        apply_poly(&x_expected, &x).is_zero(),
        format!("x is a root of {x_expected}"),
    );
    cert.push(
        "y_satisfies_expected",
        apply_poly(&y_expected, &y).is_zero(),
        format!("y is a root of {y_expected}"),
    );
    let x_min = min_poly_matrix(&x)?;
    let y_min = min_poly_matrix(&y)?;
    cert.push(
        "x_min_poly",
        x_min == x_expected,
        format!("minimal polynomial of x is {x_min}"),
    );
    cert.push(
        "y_min_poly",
        y_min == y_expected,
        format!("minimal polynomial of y is {y_min}"),
    );
    cert.push(
        "degrees_are_p",
        x_min.degree() == Some(p as usize) && y_min.degree() == Some(p as usize),
        format!("x and y both have degree {p} over F, in particular neither lies in F"),
    );

    // The dichotomy: deg(x + b·y) = p exactly for b ∈ F_p·a ∖ {0}, and p²
    // for every other b ∈ E^×.  Enumerate E^× through coordinates over
    // {1, a}.
    let mut sweep = Vec::new();
    let mut dichotomy = true;
    for c0 in 0..p {
        for c1 in 0..p {
            if c0 == 0 && c1 == 0 {
                continue;
            }
            let b = &field.int(c0 as i64) + &(&field.int(c1 as i64) * &a);
            let z = &x + &y.scale(&b);
            let deg = min_poly_matrix(&z)?
                .degree()
                .ok_or_else(|| Error::Internal("zero combination in the sweep".into()))?;
            let expected = if c0 == 0 { p as usize } else { n };
            dichotomy &= deg == expected;
            sweep.push((b, deg));
        }
    }
    cert.push(
        "combination_dichotomy",
        dichotomy,
        format!(
            "deg(x + b·y) = {p} exactly for the {} nonzero F_{p}-multiples of a, {n} otherwise",
            p - 1
        ),
    );

    Ok(PedoInstance {
        p,
        base,
        field,
        a,
        alpha,
        x,
        y,
        x_min,
        y_min,
        sweep,
        certificate: cert,
    })
}

// ---- registry adapter ----

pub struct Pedo;

impl crate::constructions::Construction for Pedo {
    fn name(&self) -> &'static str {
        "pedo"
    }

    fn summary(&self) -> &'static str {
        "two degree-p elements over F_{p^2}(X) whose combinations x + b·y \
         drop to degree p exactly when b is a nonzero F_p-multiple of a"
    }

    fn build(
        &self,
        params: &crate::constructions::BuildParams,
    ) -> Result<(Vec<(String, String)>, Certificate)> {
        let inst = build_pedo(params.p)?;
        let mut facts = vec![
            ("p".to_string(), inst.p.to_string()),
            ("field".to_string(), inst.field.to_string()),
            ("a".to_string(), inst.a.to_string()),
            ("min_poly_x".to_string(), inst.x_min.to_string()),
            ("min_poly_y".to_string(), inst.y_min.to_string()),
        ];
        for (b, deg) in &inst.sweep {
            facts.push((format!("deg(x + ({b})·y)"), deg.to_string()));
        }
        Ok((facts, inst.certificate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_instance() {
        let inst = build_pedo(2).unwrap();
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
        let field = &inst.field;
        let xvar = field.t().unwrap();
        // Z² + Z + X (signs collapse in characteristic 2).
        let expected_x =
            Poly::from_coeffs(field, vec![xvar.clone(), field.one(), field.one()]).unwrap();
        assert_eq!(inst.x_min, expected_x);
        // Z² + a⁻¹Z + X.
        let expected_y = Poly::from_coeffs(
            field,
            vec![xvar, inst.a.inv().unwrap(), field.one()],
        )
        .unwrap();
        assert_eq!(inst.y_min, expected_y);

        // b = a collapses to degree 2; b = 1 and b = a² stay at 4.
        let a = &inst.a;
        let a2 = a * a;
        for (b, deg) in &inst.sweep {
            if b == a {
                assert_eq!(*deg, 2, "deg(x + a·y)");
            } else if *b == field.one() || *b == a2 {
                assert_eq!(*deg, 4, "deg(x + {b}·y)");
            } else {
                panic!("unexpected sweep point {b}");
            }
        }
        assert_eq!(inst.sweep.len(), 3);
    }

    #[test]
    fn characteristic_three_instance() {
        let inst = build_pedo(3).unwrap();
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
        assert_eq!(inst.x_min.degree(), Some(3));
        // Eight sweep points: degree 3 for b ∈ {a, 2a}, degree 9 otherwise.
        let threes = inst.sweep.iter().filter(|(_, d)| *d == 3).count();
        let nines = inst.sweep.iter().filter(|(_, d)| *d == 9).count();
        assert_eq!((threes, nines), (2, 6));
    }

    #[test]
    fn unsupported_characteristic_is_rejected() {
        assert!(build_pedo(5).is_err());
        assert!(build_pedo(4).is_err());
    }
}
