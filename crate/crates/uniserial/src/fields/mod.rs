//! Field arithmetic for the four coefficient domains the crate works over:
//! prime fields GF(p), explicit extensions GF(p)[X]/(m), the rationals Q, and
//! rational function fields K(t) over a finite K.
//!
//! A [`Field`] is a cheap handle (an `Arc`) to a kernel implementing
//! [`FieldKernel`]; the kernel is picked once, when the field is constructed
//! or parsed, and every element op dispatches through it. Elements carry their
//! field handle, so mixing elements of different fields is caught loudly.
//!
//! Two deliberate structural choices:
//! * extensions are always a single step over the prime field — no towers, no
//!   stored embeddings. Subfield questions are answered with Frobenius orbits.
//! * rational function fields exist to exercise the imperfect-field edge
//!   cases; they are only built over finite bases, and the operations that
//!   require perfection refuse them.

pub mod fpoly;
pub(crate) mod parse;
pub mod zp;

mod extension;
mod prime;
mod ratfunc;
mod rationals;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::RngCore;

use crate::error::{Error, Result};
pub use fpoly::FBase;

/// Structural description of a field; two fields are the same iff their
/// descriptors are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime { p: u64 },
    /// GF(p)[X]/(modulus); modulus is monic irreducible, little-endian.
    Extension { p: u64, modulus: Vec<u64> },
    Rationals,
    /// base(t); base is Prime or Extension.
    RationalFunctions { base: Box<FieldDescriptor> },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime { p } => write!(f, "GF({p})"),
            FieldDescriptor::Extension { p, modulus } => {
                write!(f, "GF({p})[X]/({})", fmt_zp_poly(modulus, "X"))
            }
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::RationalFunctions { base } => write!(f, "{base}(t)"),
        }
    }
}

/// Render a Z/p coefficient vector as a polynomial in `var`, highest term
/// first ("X^2+X+1").
pub(crate) fn fmt_zp_poly(coeffs: &[u64], var: &str) -> String {
    if coeffs.iter().all(|&c| c == 0) {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let s = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}*{var}"),
            (_, 1) => format!("{var}^{i}"),
            (_, _) => format!("{c}*{var}^{i}"),
        };
        parts.push(s);
    }
    parts.join("+")
}

/// Concrete value of a field element. Payloads are kept canonical (reduced
/// residues, fixed-length coordinate vectors, reduced fractions), so derived
/// equality is semantic equality once the fields match.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Int(u64),
    Coords(Vec<u64>),
    Rat(BigRational),
    RatFn(Box<RatFn>),
}

/// A reduced fraction of polynomials over a finite base field.
/// Invariants: `den` monic and nonzero, gcd(num, den) = 1, and the zero
/// element is (empty, [1]).
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn {
    pub num: fpoly::FPoly,
    pub den: fpoly::FPoly,
}

/// The strategy interface one field kind implements. Object-safe on purpose:
/// the concrete kernel is chosen at runtime from the parsed descriptor and
/// stored behind an `Arc<dyn FieldKernel>`.
pub(crate) trait FieldKernel: fmt::Debug + Send + Sync {
    fn descriptor(&self) -> &FieldDescriptor;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field for finite fields; None otherwise.
    fn degree_over_prime(&self) -> Option<u64>;
    fn is_finite(&self) -> bool;
    fn is_perfect(&self) -> bool;

    fn zero(&self) -> Payload;
    fn one(&self) -> Payload;
    fn from_i64(&self, n: i64) -> Payload;
    fn add(&self, a: &Payload, b: &Payload) -> Payload;
    fn sub(&self, a: &Payload, b: &Payload) -> Payload;
    fn neg(&self, a: &Payload) -> Payload;
    fn mul(&self, a: &Payload, b: &Payload) -> Payload;
    fn inv(&self, a: &Payload) -> Result<Payload>;
    fn is_zero(&self, a: &Payload) -> bool;

    /// One application of x -> x^p. Errors over Q.
    fn frobenius(&self, a: &Payload) -> Result<Payload>;
    /// p-th root if it exists; the interesting failures are in K(t).
    fn pth_root(&self, a: &Payload) -> Result<Payload>;

    fn sample(&self, rng: &mut dyn RngCore) -> Payload;
    /// Number of elements when finite and it fits in u64.
    fn element_count(&self) -> Option<u64>;
    /// The index-th element of a finite field under a fixed enumeration.
    fn element_at(&self, index: u64) -> Payload;

    fn format(&self, a: &Payload) -> String;
}

/// A handle to one field. Cloning is cheap and clones refer to the same
/// kernel; equality is structural on the descriptor.
#[derive(Clone)]
pub struct Field {
    kernel: Arc<dyn FieldKernel>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.kernel, &other.kernel)
            || self.kernel.descriptor() == other.kernel.descriptor()
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.kernel.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kernel.descriptor())
    }
}

impl Field {
    pub(crate) fn from_kernel(kernel: Arc<dyn FieldKernel>) -> Self {
        Field { kernel }
    }

    pub fn rationals() -> Field {
        Field::from_kernel(Arc::new(rationals::RationalsKernel::new()))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Ok(Field::from_kernel(Arc::new(prime::PrimeKernel::new(p)?)))
    }

    /// GF(p^k) with the canonical (deterministically chosen) modulus.
    pub fn finite(p: u64, k: u64) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if k == 1 {
            return Field::prime(p);
        }
        prime::check_prime(p)?;
        let modulus = zp::canonical_modulus(p, k as usize);
        Field::extension(p, &modulus)
    }

    /// GF(p)[X]/(modulus); the modulus (little-endian) must be monic
    /// irreducible of degree >= 2.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        Ok(Field::from_kernel(Arc::new(
            extension::ExtensionKernel::new(p, modulus)?,
        )))
    }

    /// The rational function field base(t) over a finite base.
    pub fn rational_functions(base: &Field) -> Result<Field> {
        Ok(Field::from_kernel(Arc::new(ratfunc::RatFuncKernel::new(
            base,
        )?)))
    }

    /// Parse a field description like "GF(8)", "GF(2)[X]/(X^3+X+1)", "Q",
    /// or "GF(9)(t)".
    pub fn parse(text: &str) -> Result<Field> {
        parse::parse_field(text)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        self.kernel.descriptor()
    }

    pub fn characteristic(&self) -> u64 {
        self.kernel.characteristic()
    }

    pub fn degree_over_prime(&self) -> Option<u64> {
        self.kernel.degree_over_prime()
    }

    pub fn is_finite(&self) -> bool {
        self.kernel.is_finite()
    }

    pub fn is_perfect(&self) -> bool {
        self.kernel.is_perfect()
    }

    /// p^k when finite and representable.
    pub fn order(&self) -> Option<u64> {
        self.kernel.element_count()
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(self.kernel.zero())
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(self.kernel.one())
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.wrap(self.kernel.from_i64(n))
    }

    /// The residue class of X in GF(p)[X]/(m); errors for other kinds.
    pub fn generator(&self) -> Result<FieldElement> {
        match self.descriptor() {
            FieldDescriptor::Extension { .. } => {
                let k = self.degree_over_prime().unwrap() as usize;
                let mut coords = vec![0u64; k];
                coords[1] = 1;
                Ok(self.wrap(Payload::Coords(coords)))
            }
            _ => Err(Error::InvalidField(format!(
                "{self} has no distinguished generator"
            ))),
        }
    }

    /// Element with the given coordinates over the prime field (extension
    /// fields only; shorter vectors are zero-padded).
    pub fn from_coords(&self, coords: &[i64]) -> Result<FieldElement> {
        match self.descriptor() {
            FieldDescriptor::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                if coords.len() > k {
                    return Err(Error::Shape(format!(
                        "{} coordinates for an extension of degree {k}",
                        coords.len()
                    )));
                }
                let mut v = vec![0u64; k];
                for (i, &c) in coords.iter().enumerate() {
                    v[i] = zp::of_i64(*p, c);
                }
                Ok(self.wrap(Payload::Coords(v)))
            }
            FieldDescriptor::Prime { .. } if coords.len() <= 1 => {
                Ok(self.int(coords.first().copied().unwrap_or(0)))
            }
            _ => Err(Error::InvalidField(format!(
                "coordinate vectors make no sense over {self}"
            ))),
        }
    }

    /// The variable t of a rational function field.
    pub fn t(&self) -> Result<FieldElement> {
        match self.descriptor() {
            FieldDescriptor::RationalFunctions { .. } => {
                Ok(self.wrap(ratfunc::variable_payload(self.kernel())))
            }
            _ => Err(Error::InvalidField(format!("{self} has no variable t"))),
        }
    }

    /// The generator of an extension coefficient field, embedded as a
    /// constant of a rational function field.  For K(t) with K = GF(p^k),
    /// k ≥ 2, this is the adjoined root that spans K over its prime field.
    pub fn base_generator(&self) -> Result<FieldElement> {
        match self.descriptor() {
            FieldDescriptor::RationalFunctions { base }
                if matches!(**base, FieldDescriptor::Extension { .. }) =>
            {
                Ok(ratfunc::lift_base_generator(self))
            }
            _ => Err(Error::InvalidField(format!(
                "{self} has no extension coefficient field to draw a generator from"
            ))),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        parse::parse_element(self, text)
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> FieldElement {
        self.wrap(self.kernel.sample(rng))
    }

    /// Number of elements, when finite and small enough to enumerate.
    pub fn element_count(&self) -> Option<u64> {
        self.kernel.element_count()
    }

    pub fn element_at(&self, index: u64) -> FieldElement {
        self.wrap(self.kernel.element_at(index))
    }

    pub(crate) fn wrap(&self, payload: Payload) -> FieldElement {
        FieldElement {
            field: self.clone(),
            payload,
        }
    }

    pub(crate) fn kernel(&self) -> &dyn FieldKernel {
        &*self.kernel
    }
}

/// An element of some [`Field`]. Arithmetic between elements of different
/// fields panics: that is a programming error, and the public entry points
/// validate fields before any arithmetic happens.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    payload: Payload,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.field.kernel().is_zero(&self.payload)
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.wrap(self.field.kernel().inv(&self.payload)?))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let k = self.field.kernel();
        let mut base = self.payload.clone();
        let mut acc = k.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = k.mul(&acc, &base);
            }
            base = k.mul(&base, &base);
            e >>= 1;
        }
        self.field.wrap(acc)
    }

    /// Power with an arbitrary-precision exponent (used for norm maps, where
    /// exponents like (q^n - 1)/(q^d - 1) overflow u64 immediately).
    pub fn pow_big(&self, e: &BigUint) -> FieldElement {
        let k = self.field.kernel();
        let mut acc = k.one();
        let mut base = self.payload.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = k.mul(&acc, &base);
            }
            base = k.mul(&base, &base);
        }
        self.field.wrap(acc)
    }

    /// x -> x^(p^j).
    pub fn frobenius(&self, j: u64) -> Result<FieldElement> {
        let k = self.field.kernel();
        let mut p = self.payload.clone();
        for _ in 0..j {
            p = k.frobenius(&p)?;
        }
        Ok(self.field.wrap(p))
    }

    pub fn pth_root(&self) -> Result<FieldElement> {
        Ok(self.field.wrap(self.field.kernel().pth_root(&self.payload)?))
    }

    /// Degree of the element over the prime field: the length of its
    /// Frobenius orbit. Finite fields only.
    pub fn degree_over_prime(&self) -> Result<u64> {
        let k = self
            .field
            .degree_over_prime()
            .ok_or_else(|| Error::NotFinite {
                op: "element degree".into(),
                field: self.field.to_string(),
            })?;
        let mut b = self.frobenius(1)?;
        for d in 1..=k {
            if b == *self {
                debug_assert!(k % d == 0, "orbit length must divide the field degree");
                return Ok(d);
            }
            b = b.frobenius(1)?;
        }
        Err(Error::Internal(format!(
            "Frobenius orbit of {self} did not close within degree {k}"
        )))
    }

    /// Degree over the subfield of p^m elements: the length of the orbit of
    /// x -> x^(p^m). Requires m to divide the field degree.
    pub fn degree_over_subfield(&self, m: u64) -> Result<u64> {
        let k = self
            .field
            .degree_over_prime()
            .ok_or_else(|| Error::NotFinite {
                op: "element degree".into(),
                field: self.field.to_string(),
            })?;
        if m == 0 || k % m != 0 {
            return Err(Error::InvalidField(format!(
                "no subfield of degree {m} inside a field of degree {k}"
            )));
        }
        let mut b = self.frobenius(m)?;
        for d in 1..=(k / m) {
            if b == *self {
                return Ok(d);
            }
            b = b.frobenius(m)?;
        }
        Err(Error::Internal(format!(
            "orbit of {self} under the degree-{m} Frobenius did not close"
        )))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.payload == other.payload
    }
}
impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.kernel().format(&self.payload))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {}",
            self.field.kernel().format(&self.payload),
            self.field
        )
    }
}

fn require_same_field(a: &FieldElement, b: &FieldElement, op: &str) {
    assert!(
        a.field == b.field,
        "{op} between elements of {} and {}",
        a.field,
        b.field
    );
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $kmethod:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                require_same_field(self, rhs, stringify!($method));
                self.field
                    .wrap(self.field.kernel().$kmethod(&self.payload, &rhs.payload))
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

element_binop!(Add, add, add);
element_binop!(Sub, sub, sub);
element_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.kernel().neg(&self.payload))
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn descriptors_display_and_compare() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::finite(2, 2).unwrap();
        let q = Field::rationals();
        assert_eq!(f2.to_string(), "GF(2)");
        assert_eq!(f4.to_string(), "GF(2)[X]/(X^2+X+1)");
        assert_eq!(q.to_string(), "Q");
        assert_ne!(f2, f4);
        assert_eq!(f4, Field::extension(2, &[1, 1, 1]).unwrap());
        let f4t = Field::rational_functions(&f4).unwrap();
        assert_eq!(f4t.to_string(), "GF(2)[X]/(X^2+X+1)(t)");
        assert!(!f4t.is_perfect());
        assert!(f4.is_perfect());
        assert!(q.is_perfect());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(3);
        let b = f.int(5);
        assert_eq!(&a + &b, f.int(1));
        assert_eq!(&a * &b, f.int(1));
        assert_eq!(-&a, f.int(4));
        assert_eq!(a.inv().unwrap(), f.int(5));
        assert!(f.int(0).inv().is_err());
        assert_eq!(a.pow(6), f.one());
        assert_eq!(f.int(-1), f.int(6));
    }

    #[test]
    fn extension_field_f4() {
        let f4 = Field::finite(2, 2).unwrap();
        let g = f4.generator().unwrap();
        // g^2 = g + 1 under the canonical modulus X^2+X+1
        assert_eq!(g.pow(2), &g + &f4.one());
        assert_eq!(g.pow(3), f4.one());
        assert_eq!(g.inv().unwrap(), g.pow(2));
        assert_eq!(g.frobenius(1).unwrap(), g.pow(2));
        assert_eq!(g.frobenius(2).unwrap(), g);
        assert_eq!(g.degree_over_prime().unwrap(), 2);
        assert_eq!(f4.one().degree_over_prime().unwrap(), 1);
        // p-th root inverts Frobenius
        assert_eq!(g.pow(2).pth_root().unwrap(), g);
    }

    #[test]
    fn element_degrees_in_f64() {
        // inside GF(2^6): the generator has degree 6; w^21 lands in GF(4)
        // (21 = (2^6-1)/3), w^9 in GF(8)
        let f = Field::finite(2, 6).unwrap();
        let w = f.generator().unwrap();
        assert_eq!(w.degree_over_prime().unwrap(), 6);
        assert_eq!(w.pow(21).degree_over_prime().unwrap(), 2);
        assert_eq!(w.pow(9).degree_over_prime().unwrap(), 3);
        assert_eq!(w.pow(63), f.one());
        // over the subfield GF(4): w has degree 3, w^21 degree 1
        assert_eq!(w.degree_over_subfield(2).unwrap(), 3);
        assert_eq!(w.pow(21).degree_over_subfield(2).unwrap(), 1);
    }

    #[test]
    fn rationals_are_exact() {
        let q = Field::rationals();
        let half = q.int(1).div(&q.int(2)).unwrap();
        let third = q.int(1).div(&q.int(3)).unwrap();
        let sum = &half + &third;
        assert_eq!(sum, q.int(5).div(&q.int(6)).unwrap());
        assert_eq!(sum.to_string(), "5/6");
        assert!(q.int(5).frobenius(1).is_err());
    }

    #[test]
    fn ratfunc_basics() {
        let f2 = Field::prime(2).unwrap();
        let k = Field::rational_functions(&f2).unwrap();
        let t = k.t().unwrap();
        let one = k.one();
        let s = &t + &one; // t + 1
        let prod = &t * &s;
        assert_eq!(prod.to_string(), "t^2+t");
        let invt = t.inv().unwrap();
        assert_eq!(invt.to_string(), "1/t");
        assert_eq!(&t * &invt, one);
        // (t^2+t)/(t+1) reduces to t
        assert_eq!(prod.div(&s).unwrap(), t);
        // Frobenius works (squaring), but t has no square root
        assert_eq!(t.frobenius(1).unwrap(), &t * &t);
        assert!(t.pth_root().is_err());
        assert_eq!((&t * &t).pth_root().unwrap(), t);
    }

    #[test]
    fn enumeration_and_sampling() {
        let f9 = Field::finite(3, 2).unwrap();
        assert_eq!(f9.element_count(), Some(9));
        let all: Vec<_> = (0..9).map(|i| f9.element_at(i)).collect();
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    assert_ne!(all[i], all[j]);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let big = Field::finite(2, 105).unwrap();
        assert_eq!(big.element_count(), None); // 2^105 does not fit u64
        let x = big.sample(&mut rng);
        let y = big.sample(&mut rng);
        // sanity: arithmetic closes
        let _ = &(&x + &y) * &x;
    }
}
