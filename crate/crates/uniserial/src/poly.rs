//! Dense univariate polynomials over any supported coefficient field.
//!
//! Invariants maintained by every constructor and operation:
//!   - coefficients are little-endian and trimmed: the leading coefficient is
//!     nonzero unless the polynomial is zero (empty vector);
//!   - every coefficient lives in `self.field`; mixing fields is a
//!     `FieldMismatch` error at the public entry points.
//!
//! The zero polynomial has `degree() == None`.  Operations that promise a
//! monic result (`poly_gcd`, `squarefree_part`) normalize before returning.
//!
//! Polynomials are immutable values; arithmetic allocates.  Randomized
//! operations (`random_irreducible`, `find_root`) take an explicit rng handle
//! so results are reproducible under a fixed seed.

use crate::error::{Error, Result};
use crate::fields::{zp, Field, FieldDescriptor, FieldElement, Payload};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

// ---- type ----

/// A dense univariate polynomial with coefficients in one field.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Poly {
    // ---- constructors ----

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    /// The monomial X.
    pub fn x(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { field, coeffs }
    }

    /// c·X^n.
    pub fn monomial(c: FieldElement, n: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(c.field());
        }
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly { field, coeffs }
    }

    /// Build from little-endian coefficients; they must all lie in `field`.
    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Result<Poly> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.descriptor().to_string(),
                    found: c.field().descriptor().to_string(),
                });
            }
        }
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    /// Build from little-endian integer coefficients (mapped via `field.int`).
    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        let coeffs = ints.iter().map(|&n| field.int(n)).collect();
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    // ---- accessors ----

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    // ---- arithmetic ----

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        let mut p = Poly { field: self.field.clone(), coeffs };
        p.trim();
        p
    }

    /// Multiply by X^n.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    /// Divide by the leading coefficient; monic(0) = 0.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        let mut p = Poly { field: self.field.clone(), coeffs };
        p.trim();
        p
    }

    /// Horner evaluation; `a` must lie in the coefficient field.
    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    /// Repeated-squaring power; pow(0) = 1.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor or a field mismatch.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if self.field != d.field {
            return Err(Error::FieldMismatch {
                expected: self.field.descriptor().to_string(),
                found: d.field.descriptor().to_string(),
            });
        }
        let dd = match d.degree() {
            None => return Err(Error::DivisionByZero),
            Some(n) => n,
        };
        let nd = match self.degree() {
            None => return Ok((Poly::zero(&self.field), Poly::zero(&self.field))),
            Some(n) => n,
        };
        if nd < dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lc_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let q = &rem[i] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for j in 0..dd {
                let t = &q * &d.coeffs[j];
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
            rem[i] = self.field.zero();
            quot[i - dd] = q;
        }
        let mut qp = Poly { field: self.field.clone(), coeffs: quot };
        let mut rp = Poly { field: self.field.clone(), coeffs: rem };
        qp.trim();
        rp.trim();
        Ok((qp, rp))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Division known to be exact; a nonzero remainder is an internal error.
    pub(crate) fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "exact division left remainder {r} (dividing {self} by {d})"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    // ---- text forms ----

    /// Accepts `X^4+X^2+1` expression form (X, Y or Z as the indeterminate;
    /// field symbols g/a/t denote coefficient constants) and little-endian
    /// coefficient list form `[1,0,1,0,1]`.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let expr = crate::fields::parse::parse_expr("polynomial", text)?;
        match &expr {
            crate::fields::parse::Expr::List(items) => {
                let mut coeffs = Vec::with_capacity(items.len());
                for item in items {
                    coeffs.push(crate::fields::parse::eval_in_field(field, item)?);
                }
                Poly::from_coeffs(field, coeffs)
            }
            _ => eval_poly_expr(field, &expr),
        }
    }
}

fn require_same_field(a: &Poly, b: &Poly) {
    assert!(
        a.field == b.field,
        "polynomial field mismatch: {} vs {}",
        a.field.descriptor(),
        b.field.descriptor()
    );
}

fn add_impl(a: &Poly, b: &Poly) -> Poly {
    require_same_field(a, b);
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        coeffs.push(&a.coeff(i) + &b.coeff(i));
    }
    let mut p = Poly { field: a.field.clone(), coeffs };
    p.trim();
    p
}

fn sub_impl(a: &Poly, b: &Poly) -> Poly {
    require_same_field(a, b);
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        coeffs.push(&a.coeff(i) - &b.coeff(i));
    }
    let mut p = Poly { field: a.field.clone(), coeffs };
    p.trim();
    p
}

fn mul_impl(a: &Poly, b: &Poly) -> Poly {
    require_same_field(a, b);
    if a.is_zero() || b.is_zero() {
        return Poly::zero(&a.field);
    }
    let mut coeffs = vec![a.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            let t = ca * cb;
            coeffs[i + j] = &coeffs[i + j] + &t;
        }
    }
    let mut p = Poly { field: a.field.clone(), coeffs };
    p.trim();
    p
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $impl_fn(self, rhs)
            }
        }
        impl std::ops::$trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $impl_fn(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $impl_fn(&self, rhs)
            }
        }
        impl std::ops::$trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $impl_fn(self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_impl);
poly_binop!(Sub, sub, sub_impl);
poly_binop!(Mul, mul, mul_impl);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Poly { field: self.field.clone(), coeffs }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// ---- display ----

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let mut sign = '+';
            // Fold a plain leading minus (rational coefficients) into the
            // joining sign; bracketed/parenthesized forms are self-delimiting.
            if let Some(rest) = s.strip_prefix('-') {
                if !rest.contains('+') && !rest.contains('-') {
                    sign = '-';
                    s = rest.to_string();
                }
            }
            // Composite coefficients must stay one factor when attached to a
            // power of X; bracketed coordinate forms are already delimited.
            if i >= 1
                && !s.starts_with('[')
                && !s.starts_with('(')
                && (s.contains('+') || s.contains('-') || s.contains('/') || s.contains('*'))
            {
                s = format!("({s})");
            }
            let body = match (i, s.as_str()) {
                (0, _) => s,
                (1, "1") => "X".into(),
                (1, _) => format!("{s}*X"),
                (_, "1") => format!("X^{i}"),
                (_, _) => format!("{s}*X^{i}"),
            };
            if out.is_empty() {
                if sign == '-' {
                    out.push('-');
                }
            } else {
                out.push(sign);
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} over {}", self, self.field.descriptor())
    }
}

fn eval_poly_expr(field: &Field, e: &crate::fields::parse::Expr) -> Result<Poly> {
    use crate::fields::parse::{eval_in_field, Expr};
    Ok(match e {
        Expr::Sym(s) if matches!(s.as_str(), "X" | "x" | "Y" | "y" | "Z" | "z") => Poly::x(field),
        Expr::Num(_) | Expr::Sym(_) | Expr::List(_) => {
            Poly::constant(eval_in_field(field, e)?)
        }
        Expr::Add(a, b) => &eval_poly_expr(field, a)? + &eval_poly_expr(field, b)?,
        Expr::Sub(a, b) => &eval_poly_expr(field, a)? - &eval_poly_expr(field, b)?,
        Expr::Neg(a) => -eval_poly_expr(field, a)?,
        Expr::Mul(a, b) => &eval_poly_expr(field, a)? * &eval_poly_expr(field, b)?,
        Expr::Div(a, b) => {
            let num = eval_poly_expr(field, a)?;
            let den = eval_poly_expr(field, b)?;
            match den.degree() {
                None => return Err(Error::DivisionByZero),
                Some(0) => num.scale(&den.coeff(0).inv()?),
                Some(_) => {
                    return Err(Error::parse(
                        "polynomial",
                        "division by a nonconstant polynomial",
                    ))
                }
            }
        }
        Expr::Pow(b, e) => {
            let base = eval_poly_expr(field, b)?;
            if *e < 0 {
                match base.degree() {
                    Some(0) => Poly::constant(base.coeff(0).inv()?.pow((-e) as u64)),
                    _ => {
                        return Err(Error::parse(
                            "polynomial",
                            "negative power of a nonconstant polynomial",
                        ))
                    }
                }
            } else {
                if *e as usize * base.coeffs.len().max(1) > 100_000 {
                    return Err(Error::parse("polynomial", "power blows up the degree"));
                }
                base.pow(*e as u32)
            }
        }
    })
}

// ---- gcd ----

/// Monic greatest common divisor; gcd(f, 0) = monic(f), gcd(0, 0) = 0.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    require_same_field(f, g);
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended gcd: returns (g, u, v) with u·f + v·g₀ = g, g monic (or zero).
pub(crate) fn poly_ext_gcd(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    require_same_field(f, g);
    let field = f.field().clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(&field), Poly::zero(&field));
    let (mut t0, mut t1) = (Poly::zero(&field), Poly::one(&field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = lc.inv().expect("nonzero leading coefficient");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// Inverse of `a` modulo `m` (they must be coprime), reduced mod `m`.
pub(crate) fn inverse_mod(a: &Poly, m: &Poly) -> Result<Poly> {
    let (g, u, _) = poly_ext_gcd(a, m);
    if !g.is_one() {
        return Err(Error::Singular);
    }
    u.rem(m)
}

// ---- squarefree part ----

/// Product of the distinct irreducible factors of `f`, monic.
///
/// Over perfect fields this always succeeds.  Over a rational function field
/// the p-th roots needed by the characteristic-p step may not exist; the
/// failure surfaces as `NoPthRoot` (e.g. X²+t over GF(2)(t), which is
/// irreducible precisely because t has no square root).
pub fn squarefree_part(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::Shape("squarefree part of the zero polynomial".into()));
    }
    let f = f.monic();
    if f.degree() == Some(0) {
        return Ok(Poly::one(f.field()));
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f = h(X^p); replace each X^p by X after taking p-th roots of the
        // coefficients, then recurse.  Root failure means the field is
        // imperfect and f has an inseparable factor.
        return squarefree_part(&pth_root_poly(&f, p)?);
    }
    let g = f.exact_div(&poly_gcd(&f, &df))?;
    // Strip every factor that appears in g; what is left has all exponents
    // divisible by the characteristic (or is constant, in characteristic 0).
    let mut rest = f.clone();
    loop {
        let d = poly_gcd(&rest, &g);
        if d.degree() == Some(0) {
            break;
        }
        rest = rest.exact_div(&d)?;
    }
    if rest.degree() == Some(0) {
        return Ok(g);
    }
    if !rest.derivative().is_zero() {
        return Err(Error::Internal(format!(
            "residual factor {rest} should lie in F[X^p]"
        )));
    }
    let tail = squarefree_part(&pth_root_poly(&rest, p)?)?;
    let overlap = poly_gcd(&g, &tail);
    (&g * &tail).exact_div(&overlap)
}

/// For f = h(X^p) with zero derivative, return h with each coefficient
/// replaced by its p-th root, i.e. the exact p-th root of f.
fn pth_root_poly(f: &Poly, p: u64) -> Result<Poly> {
    debug_assert!(p > 0);
    let n = f.coeffs().len();
    let step = p as usize;
    let mut coeffs = Vec::with_capacity(n / step + 1);
    for i in (0..n).step_by(step) {
        coeffs.push(f.coeff(i).pth_root()?);
    }
    Poly::from_coeffs(f.field(), coeffs)
}

// ---- irreducibility over finite fields ----

/// Rabin's test: f is irreducible over F_q (q = p^k) iff X^(q^n) ≡ X mod f
/// and gcd(X^(q^(n/ℓ)) − X, f) = 1 for every prime ℓ dividing n = deg f.
///
/// Only finite coefficient fields are supported; rationals and rational
/// function fields are rejected with `NotFinite`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if !f.field().is_finite() {
        return Err(Error::NotFinite {
            op: "is_irreducible".into(),
            field: f.field().descriptor().to_string(),
        });
    }
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::Shape(
                "irreducibility is only defined for degree >= 1".into(),
            ))
        }
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    match zp_coeffs(&f) {
        Some((p, coeffs)) => Ok(zp::pirreducible(p, &coeffs)),
        None => rabin_generic(&f),
    }
}

/// Generic Rabin ladder for extension coefficient fields: iterate the q-power
/// Frobenius of F_q[X]/(f) by modular composition with X^q mod f.
fn rabin_generic(f: &Poly) -> Result<bool> {
    let field = f.field();
    let n = f.degree().expect("nonconstant");
    if n == 1 {
        return Ok(true);
    }
    let p = field.characteristic();
    let k = field.degree_over_prime().expect("finite field");
    let q = BigUint::from(p).pow(k as u32);
    let x = Poly::x(field);
    let frob = pow_mod(&x, &q, f)?;
    let mut checkpoints: Vec<usize> = zp::prime_factors(n as u64)
        .into_iter()
        .map(|l| n / l as usize)
        .collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let mut ladder = frob.clone();
    for j in 1..=n {
        if j > 1 {
            ladder = compose_mod(&ladder, &frob, f)?;
        }
        if checkpoints.contains(&j) {
            let d = poly_gcd(&(&ladder - &x), f);
            if d.degree() != Some(0) {
                return Ok(false);
            }
        }
        if j == n {
            return Ok(&ladder - &x == Poly::zero(field));
        }
    }
    unreachable!("ladder covers 1..=n");
}

/// Borrow the prime and residue coefficients when the coefficient field is
/// GF(p), enabling the fast machine-word code paths.
fn zp_coeffs(f: &Poly) -> Option<(u64, Vec<u64>)> {
    match f.field().descriptor() {
        FieldDescriptor::Prime { p } => {
            let mut out = Vec::with_capacity(f.coeffs().len());
            for c in f.coeffs() {
                match c.payload() {
                    Payload::Int(v) => out.push(*v),
                    _ => return None,
                }
            }
            Some((*p, out))
        }
        _ => None,
    }
}

fn poly_from_zp(field: &Field, coeffs: &[u64]) -> Poly {
    let elems = coeffs.iter().map(|&c| field.wrap(Payload::Int(c))).collect();
    Poly::from_coeffs(field, elems).expect("residues lie in the prime field")
}

// ---- random irreducibles ----

/// Uniformly random monic irreducible of the given degree over a finite
/// field.  Expected O(degree) trials; gives up (internal error) only after
/// 100·degree failures, which a correct generator never hits in practice.
pub fn random_irreducible<R: Rng>(
    field: &Field,
    degree: usize,
    rng: &mut R,
) -> Result<Poly> {
    if !field.is_finite() {
        return Err(Error::NotFinite {
            op: "random_irreducible".into(),
            field: field.descriptor().to_string(),
        });
    }
    if degree == 0 {
        return Err(Error::Shape("irreducibles have degree >= 1".into()));
    }
    let cap = 100 * degree.max(4);
    if let FieldDescriptor::Prime { p } = *field.descriptor() {
        for _ in 0..cap {
            let cand = zp::prandom_monic(p, degree, rng);
            if zp::pirreducible(p, &cand) {
                return Ok(poly_from_zp(field, &cand));
            }
        }
    } else {
        for _ in 0..cap {
            let mut coeffs: Vec<FieldElement> =
                (0..degree).map(|_| field.sample(rng)).collect();
            if degree > 1 && coeffs[0].is_zero() {
                coeffs[0] = field.one(); // avoid the obvious root at 0
            }
            coeffs.push(field.one());
            let cand = Poly::from_coeffs(field, coeffs)?;
            if is_irreducible(&cand)? {
                return Ok(cand);
            }
        }
    }
    Err(Error::Internal(format!(
        "no irreducible of degree {degree} over {} found in {cap} trials",
        field.descriptor()
    )))
}

// ---- root finding in extensions ----

/// A root in K of a polynomial irreducible over the prime subfield of K.
///
/// Supported layouts: coefficients over GF(p) with K = GF(p) or an extension
/// of GF(p), or coefficients already in K.  Small fields are swept
/// deterministically; large ones go through a norm-map power to land an
/// element of the right subfield degree, followed by Cantor–Zassenhaus
/// splitting in an abstract copy of that subfield.
///
/// Errors with `NoRoot` when deg f does not divide [K : F] (no root exists).
pub fn find_root<R: Rng>(f: &Poly, k: &Field, rng: &mut R) -> Result<FieldElement> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::Shape("root finding needs degree >= 1".into()))
        }
        Some(d) => d,
    };
    let f = f.monic();
    if f.field() == k {
        if d == 1 {
            let root = -f.coeff(0);
            return Ok(root);
        }
        if !k.is_finite() {
            return Err(Error::Unsupported(format!(
                "root finding over {} is not supported",
                k.descriptor()
            )));
        }
        // Coefficients already in K: an irreducible of degree >= 2 has no
        // root in K itself; reducible inputs are out of contract.
        if is_irreducible(&f)? {
            return Err(Error::NoRoot {
                deg: d,
                ext: 1,
                field: k.descriptor().to_string(),
            });
        }
        return small_field_sweep(&f, k).ok_or_else(|| Error::NoRoot {
            deg: d,
            ext: 1,
            field: k.descriptor().to_string(),
        });
    }
    let (p, coeffs) = match zp_coeffs(&f) {
        Some(pc) => pc,
        None => {
            return Err(Error::Unsupported(format!(
                "root finding needs coefficients over GF(p) or over K itself \
                 (got {} into {})",
                f.field().descriptor(),
                k.descriptor()
            )))
        }
    };
    if k.characteristic() != p {
        return Err(Error::FieldMismatch {
            expected: format!("an extension of {}", f.field().descriptor()),
            found: k.descriptor().to_string(),
        });
    }
    if !zp::pirreducible(p, &coeffs) {
        return Err(Error::Unsupported(
            "root finding requires an irreducible input".into(),
        ));
    }
    let ext = k.degree_over_prime().unwrap_or(1);
    if ext % d as u64 != 0 {
        return Err(Error::NoRoot { deg: d, ext: ext as u32, field: k.descriptor().to_string() });
    }
    let lifted = lift_to(&f, k)?;
    if d == 1 {
        return Ok(-lifted.coeff(0));
    }
    const SWEEP_LIMIT: u64 = 4096;
    if let Some(count) = k.element_count() {
        if count <= SWEEP_LIMIT {
            return small_field_sweep(&lifted, k).ok_or_else(|| {
                Error::Internal("an irreducible of dividing degree must have a root".into())
            });
        }
    }
    // Norm-map path: w = u^((p^ext − 1)/(p^d − 1)) lies in the subfield of
    // order p^d; retry until its Frobenius orbit has full size d.
    let big_ord = BigUint::from(p).pow(ext as u32) - 1u32;
    let sub_ord = BigUint::from(p).pow(d as u32) - 1u32;
    let e = &big_ord / &sub_ord;
    debug_assert!((&big_ord % &sub_ord).is_zero());
    let mut w = None;
    for _ in 0..200 {
        let u = k.sample(rng);
        if u.is_zero() {
            continue;
        }
        let cand = u.pow_big(&e);
        if cand.degree_over_prime()? == d as u64 {
            w = Some(cand);
            break;
        }
    }
    let w = w.ok_or_else(|| {
        Error::Internal("no subfield generator found in 200 norm-map trials".into())
    })?;
    // Minimal polynomial of w over GF(p), as the product over its Frobenius
    // orbit; the coefficients are prime-field constants by Galois invariance.
    let mut m = Poly::one(k);
    let mut orbit = w.clone();
    for _ in 0..d {
        m = &m * &(&Poly::x(k) - &Poly::constant(orbit.clone()));
        orbit = orbit.frobenius(1)?;
    }
    let mut m_coeffs = Vec::with_capacity(d + 1);
    for c in m.coeffs() {
        m_coeffs.push(prime_constant(c).ok_or_else(|| {
            Error::Internal("orbit product must have prime-field coefficients".into())
        })?);
    }
    // Split f inside the abstract copy L = GF(p)[Y]/(m_w) of GF(p^d), then
    // map the found root back through Y -> w.
    let l = Field::extension(p, &m_coeffs)?;
    let f_in_l = lift_to(&f, &l)?;
    let root_l = cz_root(&f_in_l, rng)?;
    let root_coords = match root_l.payload() {
        Payload::Coords(cs) => cs.clone(),
        Payload::Int(v) => vec![*v],
        _ => return Err(Error::Internal("extension element expected".into())),
    };
    let mut root = k.zero();
    for c in root_coords.iter().rev() {
        root = &(&root * &w) + &embed_prime(k, *c);
    }
    if !lifted.eval(&root).is_zero() {
        return Err(Error::Internal("computed root fails to evaluate to zero".into()));
    }
    Ok(root)
}

/// Deterministic sweep over all elements of a small finite field.
fn small_field_sweep(f: &Poly, k: &Field) -> Option<FieldElement> {
    let count = k.element_count()?;
    for i in 0..count {
        let a = k.element_at(i);
        if f.eval(&a).is_zero() {
            return Some(a);
        }
    }
    None
}

/// One root of a polynomial that splits completely over its own (finite)
/// coefficient field, by equal-degree splitting.
fn cz_root<R: Rng>(f: &Poly, rng: &mut R) -> Result<FieldElement> {
    let field = f.field().clone();
    let p = field.characteristic();
    let k = field.degree_over_prime().expect("finite field");
    let mut g = f.monic();
    let mut guard = 0;
    while g.degree() != Some(1) {
        guard += 1;
        if guard > 200 {
            return Err(Error::Internal("equal-degree splitting failed to converge".into()));
        }
        let a = field.sample(rng);
        let split = if p == 2 {
            // Char 2: gcd with the trace polynomial of a·X.
            let mut term = (&Poly::x(&field).scale(&a)).rem(&g)?;
            let mut acc = term.clone();
            for _ in 1..k {
                term = mul_mod(&term, &term, &g)?;
                acc = &acc + &term;
            }
            acc
        } else {
            // Odd characteristic: gcd with (X+a)^((q−1)/2) − 1.
            let q = BigUint::from(p).pow(k as u32);
            let exp = (&q - 1u32) >> 1;
            let base = &Poly::x(&field) + &Poly::constant(a);
            let pw = pow_mod(&base, &exp, &g)?;
            &pw - &Poly::one(&field)
        };
        let d = poly_gcd(&split, &g);
        let dd = d.degree().unwrap_or(0);
        if dd == 0 || dd == g.degree().unwrap() {
            continue;
        }
        // Recurse into the smaller factor.
        g = if dd * 2 <= g.degree().unwrap() { d } else { g.exact_div(&d)? };
    }
    Ok(-g.coeff(0))
}

/// Constant-embed a prime residue into a finite field of characteristic p.
fn embed_prime(k: &Field, v: u64) -> FieldElement {
    match k.descriptor() {
        FieldDescriptor::Prime { .. } => k.wrap(Payload::Int(v)),
        FieldDescriptor::Extension { modulus, .. } => {
            let deg = modulus.len() - 1;
            let mut coords = vec![0u64; deg];
            coords[0] = v;
            k.wrap(Payload::Coords(coords))
        }
        _ => unreachable!("embed_prime is only called for finite fields"),
    }
}

/// The prime residue of a finite-field element lying in the prime subfield.
fn prime_constant(c: &FieldElement) -> Option<u64> {
    match c.payload() {
        Payload::Int(v) => Some(*v),
        Payload::Coords(cs) => {
            if cs.iter().skip(1).all(|&x| x == 0) {
                Some(*cs.first().unwrap_or(&0))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Re-express a polynomial with GF(p) coefficients over an extension of
/// GF(p) (or over GF(p) itself).
pub(crate) fn lift_to(f: &Poly, k: &Field) -> Result<Poly> {
    if f.field() == k {
        return Ok(f.clone());
    }
    let (p, coeffs) = zp_coeffs(f).ok_or_else(|| Error::Unsupported(format!(
        "cannot lift coefficients from {} into {}",
        f.field().descriptor(),
        k.descriptor()
    )))?;
    if k.characteristic() != p || !k.is_finite() {
        return Err(Error::FieldMismatch {
            expected: format!("an extension of {}", f.field().descriptor()),
            found: k.descriptor().to_string(),
        });
    }
    let elems = coeffs.iter().map(|&c| embed_prime(k, c)).collect();
    Poly::from_coeffs(k, elems)
}

// ---- prime-power shape ----

/// Decide whether f = p^ℓ for a monic irreducible p; returns (p, ℓ) or None.
///
/// Refuses imperfect coefficient fields: the squarefree machinery needs p-th
/// roots that may not exist there.
pub fn prime_power_shape(f: &Poly) -> Result<Option<(Poly, u32)>> {
    if !f.field().is_perfect() {
        return Err(Error::ImperfectField {
            op: "prime_power_shape".into(),
            field: f.field().descriptor().to_string(),
        });
    }
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::Shape("prime-power shape needs degree >= 1".into()))
        }
        Some(n) => n,
    };
    let f = f.monic();
    let p = squarefree_part(&f)?;
    let dp = p.degree().expect("squarefree part of a nonconstant is nonconstant");
    if n % dp != 0 {
        return Ok(None);
    }
    let l = (n / dp) as u32;
    if p.pow(l) != f {
        return Ok(None);
    }
    let irr = if f.field().is_finite() {
        is_irreducible(&p)?
    } else {
        q_irreducible(&p)?
    };
    Ok(if irr { Some((p, l)) } else { None })
}

// ---- bounded irreducibility over Q (internal) ----

/// Bounded irreducibility decision over the rationals.
///
/// Complete for degree <= 3 (rational root test after clearing
/// denominators).  For higher degrees, an irreducible image modulo a small
/// prime certifies irreducibility; if no prime below 100 certifies, the
/// question is reported as `Unsupported` rather than guessed.
pub(crate) fn q_irreducible(f: &Poly) -> Result<bool> {
    debug_assert_eq!(*f.field().descriptor(), FieldDescriptor::Rationals);
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::Shape("irreducibility needs degree >= 1".into()))
        }
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let ints = clear_denominators(f);
    if n <= 3 {
        // Degree 2 or 3: irreducible iff no rational root.
        return Ok(!has_rational_root(&ints)?);
    }
    if has_rational_root(&ints)? {
        return Ok(false);
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
        let pb = BigInt::from(p);
        if (ints.last().unwrap() % &pb).is_zero() {
            continue; // degree drops mod p
        }
        let residues: Vec<u64> = ints
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.to_u64().expect("residue fits")
            })
            .collect();
        if zp::pirreducible(p, &residues) {
            return Ok(true);
        }
    }
    Err(Error::Unsupported(format!(
        "irreducibility over Q undecided for {f} (degree {n} with no modular certificate)"
    )))
}

/// Primitive integer coefficients of a rational polynomial (denominators
/// cleared, content divided out, positive leading coefficient).
fn clear_denominators(f: &Poly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        if let Payload::Rat(r) = c.payload() {
            den = den.lcm(r.denom());
        }
    }
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| match c.payload() {
            Payload::Rat(r) => r.numer() * (&den / r.denom()),
            _ => unreachable!("rational payload"),
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().map_or(false, |c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

/// Rational root test for a primitive integer polynomial; errors with
/// `GuardExceeded` when the end coefficients are too large to factor by
/// trial division.
fn has_rational_root(ints: &[BigInt]) -> Result<bool> {
    let a0 = ints.first().expect("nonempty");
    let an = ints.last().expect("nonempty");
    if a0.is_zero() {
        return Ok(true); // root at 0
    }
    const FACTOR_LIMIT: u64 = 1 << 40;
    let a0 = a0.abs().to_u64().filter(|&v| v <= FACTOR_LIMIT).ok_or(
        Error::GuardExceeded {
            what: "rational root test constant term".into(),
            limit: FACTOR_LIMIT,
            actual: u64::MAX,
        },
    )?;
    let an = an.abs().to_u64().filter(|&v| v <= FACTOR_LIMIT).ok_or(
        Error::GuardExceeded {
            what: "rational root test leading term".into(),
            limit: FACTOR_LIMIT,
            actual: u64::MAX,
        },
    )?;
    let num_divs = divisors(a0);
    let den_divs = divisors(an);
    for p in &num_divs {
        for q in &den_divs {
            let g = num_integer::gcd(*p, *q);
            let (p, q) = (p / g, q / g);
            for sign in [1i64, -1] {
                // q^n·f(±p/q) by Horner: Σ a_{n-k} (±p)^{n-k} q^k.
                let num = BigInt::from(p as i64 * sign);
                let den = BigInt::from(q);
                let mut acc = BigInt::zero();
                let mut qpow = BigInt::one();
                for c in ints.iter().rev() {
                    acc = acc * &num + c * &qpow;
                    qpow *= &den;
                }
                if acc.is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

// ---- modular helpers ----

pub(crate) fn mul_mod(a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
    (a * b).rem(m)
}

/// base^e mod m by square-and-multiply over the bits of e.
pub(crate) fn pow_mod(base: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(m)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = mul_mod(&acc, &b, m)?;
        }
        if i + 1 < bits {
            b = mul_mod(&b, &b, m)?;
        }
    }
    Ok(acc)
}

/// g(s) mod m by Horner.
pub(crate) fn compose_mod(g: &Poly, s: &Poly, m: &Poly) -> Result<Poly> {
    let field = g.field();
    let mut acc = Poly::zero(field);
    for c in g.coeffs().iter().rev() {
        acc = &mul_mod(&acc, s, m)? + &Poly::constant(c.clone());
    }
    acc.rem(m)
}

// ---- tests ----

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f4() -> Field {
        Field::finite(2, 2).unwrap()
    }

    #[test]
    fn gcd_matches_pinned_examples() {
        let q = q();
        let a = Poly::from_ints(&q, &[-1, 0, 1]); // X^2 - 1
        let b = Poly::from_ints(&q, &[-1, 1]); // X - 1
        assert_eq!(poly_gcd(&a, &b), b);

        // gcd with zero returns the monic normalization of the other input.
        let f = Poly::from_ints(&q, &[2, 2]);
        let z = Poly::zero(&q);
        assert_eq!(poly_gcd(&f, &z), Poly::from_ints(&q, &[1, 1]));
        assert!(poly_gcd(&z, &z).is_zero());

        let f2 = f2();
        let p = Poly::from_ints(&f2, &[1, 1, 1]); // X^2+X+1
        let lhs = p.pow(2);
        let rhs = &p * &Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(poly_gcd(&lhs, &rhs), p);
    }

    #[test]
    fn extended_gcd_produces_bezout_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fields = [q(), f2(), Field::prime(5).unwrap(), f4()];
        for field in &fields {
            for _ in 0..50 {
                let da = (rng.gen::<u32>() % 6) as usize;
                let db = (rng.gen::<u32>() % 6) as usize;
                let a = random_poly(field, da, &mut rng);
                let b = random_poly(field, db, &mut rng);
                let (g, u, v) = poly_ext_gcd(&a, &b);
                assert_eq!(&(&u * &a) + &(&v * &b), g, "Bezout identity over {}", field.descriptor());
                if !g.is_zero() {
                    assert!(g.divides(&a));
                    assert!(g.divides(&b));
                    assert!(g.is_monic());
                }
            }
        }
    }

    fn random_poly<R: Rng>(field: &Field, deg: usize, rng: &mut R) -> Poly {
        let coeffs: Vec<FieldElement> = (0..=deg).map(|_| field.sample(rng)).collect();
        Poly::from_coeffs(field, coeffs).unwrap()
    }

    #[test]
    fn squarefree_part_examples() {
        let q = q();
        let f = Poly::from_ints(&q, &[-1, 1]).pow(2); // (X-1)^2
        assert_eq!(squarefree_part(&f).unwrap(), Poly::from_ints(&q, &[-1, 1]));

        let f2 = f2();
        let f = Poly::from_ints(&f2, &[1, 0, 1, 0, 1]); // X^4+X^2+1 = (X^2+X+1)^2
        assert_eq!(squarefree_part(&f).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));

        // X^2 + t over GF(2)(t): the needed square root of t does not exist.
        let k = Field::rational_functions(&f2).unwrap();
        let f = &Poly::x(&k).pow(2) + &Poly::constant(k.t().unwrap());
        match squarefree_part(&f) {
            Err(Error::NoPthRoot { .. }) => {}
            other => panic!("expected NoPthRoot, got {other:?}"),
        }

        // Same failure through the mixed route (X^2+t)(X+1).
        let g = &f * &Poly::from_ints(&k, &[1, 1]);
        assert!(matches!(squarefree_part(&g), Err(Error::NoPthRoot { .. })));

        // A benign inseparable-looking input over the same imperfect field:
        // X^2+1 = (X+1)^2 only needs the square root of 1.
        let h = Poly::from_ints(&k, &[1, 0, 1]);
        assert_eq!(squarefree_part(&h).unwrap(), Poly::from_ints(&k, &[1, 1]));
    }

    #[test]
    fn squarefree_part_properties_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fields = [q(), f2(), Field::prime(3).unwrap()];
        for field in &fields {
            for _ in 0..40 {
                // Random product of small factors with random multiplicities.
                let mut f = Poly::one(field);
                for _ in 0..(1 + rng.gen::<u32>() % 3) {
                    let d = 1 + (rng.gen::<u32>() % 2) as usize;
                    let mut base = random_poly(field, d, &mut rng);
                    if base.degree().map_or(true, |n| n == 0) {
                        base = Poly::x(field);
                    }
                    let e = 1 + rng.gen::<u32>() % 3;
                    f = &f * &base.pow(e);
                }
                let g = squarefree_part(&f).unwrap();
                assert!(g.divides(&f), "radical divides over {}", field.descriptor());
                assert!(g.is_monic());
                let dg = poly_gcd(&g, &g.derivative());
                assert_eq!(dg.degree(), Some(0), "output is squarefree");
                // Every irreducible factor of f shows up in g: f divides a
                // high power of g.
                let n = f.degree().unwrap() as u32;
                assert!(f.divides(&g.pow(n.max(1))));
            }
        }
    }

    #[test]
    fn irreducibility_examples_over_f2() {
        let f2 = f2();
        assert!(is_irreducible(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&Poly::from_ints(&f2, &[1, 0, 1])).unwrap());

        // X^4+X+1: cross-check by exhaustive trial division against every
        // monic polynomial of degree 1 or 2 over GF(2).
        let quartic = Poly::from_ints(&f2, &[1, 1, 0, 0, 1]);
        let mut has_factor = false;
        for bits in 0..8u32 {
            let deg = if bits < 4 { 1 } else { 2 };
            let mut ints = vec![0i64; deg + 1];
            ints[deg] = 1;
            for j in 0..deg {
                ints[j] = ((bits >> j) & 1) as i64;
            }
            let cand = Poly::from_ints(&f2, &ints);
            if cand.degree() == Some(deg) && cand.divides(&quartic) {
                has_factor = true;
            }
        }
        assert!(!has_factor);
        assert!(is_irreducible(&quartic).unwrap());

        assert!(matches!(
            is_irreducible(&Poly::from_ints(&q(), &[1, 1])),
            Err(Error::NotFinite { .. })
        ));
    }

    #[test]
    fn generic_ladder_agrees_with_prime_field_fast_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f5 = Field::prime(5).unwrap();
        for _ in 0..60 {
            let deg = 1 + (rng.gen::<u32>() % 5) as usize;
            let mut f = random_poly(&f5, deg, &mut rng);
            if f.degree().map_or(true, |n| n == 0) {
                f = Poly::x(&f5);
            }
            let f = f.monic();
            let fast = is_irreducible(&f).unwrap();
            let slow = rabin_generic(&f).unwrap();
            assert_eq!(fast, slow, "ladder disagrees on {f}");
        }

        // Extension coefficients: X^2+X+g is irreducible over GF(4) (its
        // trace obstruction is nonzero), X^2+X+1 = (X+g)(X+g^2) is not.
        let f4 = f4();
        let g = f4.generator().unwrap();
        let irred = Poly::from_coeffs(&f4, vec![g.clone(), f4.one(), f4.one()]).unwrap();
        assert!(is_irreducible(&irred).unwrap());
        let split = Poly::from_ints(&f4, &[1, 1, 1]);
        assert!(!is_irreducible(&split).unwrap());
    }

    #[test]
    fn random_irreducible_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for field in [f2(), Field::prime(3).unwrap(), f4()] {
            for deg in 1..=6 {
                let f = random_irreducible(&field, deg, &mut rng).unwrap();
                assert_eq!(f.degree(), Some(deg));
                assert!(f.is_monic());
                assert!(is_irreducible(&f).unwrap());
            }
        }
        // Degree 1 outputs are X + c.
        let lin = random_irreducible(&f2(), 1, &mut rng).unwrap();
        assert_eq!(lin.degree(), Some(1));

        // Large-degree search stays within the trial budget (the generator
        // errors out beyond 100·n trials rather than spinning).
        let big = random_irreducible(&f2(), 105, &mut rng).unwrap();
        assert_eq!(big.degree(), Some(105));
    }

    #[test]
    fn find_root_pinned_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f2 = f2();
        let f4 = f4();

        // The canonical modulus of GF(4) is X^2+X+1, so the deterministic
        // sweep returns the coset of X itself.
        let f = Poly::from_ints(&f2, &[1, 1, 1]);
        let root = find_root(&f, &f4, &mut rng).unwrap();
        assert_eq!(root, f4.generator().unwrap());

        // Linear polynomials embed their root.
        let f7 = Field::prime(7).unwrap();
        let lin = Poly::from_ints(&f7, &[-5, 1]);
        assert_eq!(find_root(&lin, &f7, &mut rng).unwrap(), f7.int(5));
        let k64 = Field::finite(2, 6).unwrap();
        let lin2 = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(find_root(&lin2, &k64, &mut rng).unwrap(), k64.one());

        // Coefficients already in K.
        let g = f4.generator().unwrap();
        let xg = &Poly::x(&f4) - &Poly::constant(g.clone());
        assert_eq!(find_root(&xg, &f4, &mut rng).unwrap(), g);

        // Degree mismatch: no root of a quadratic in GF(2^3).
        let k8 = Field::finite(2, 3).unwrap();
        assert!(matches!(
            find_root(&f, &k8, &mut rng),
            Err(Error::NoRoot { deg: 2, ext: 3, .. })
        ));
    }

    #[test]
    fn find_root_lands_in_the_right_subfield_of_a_big_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let f2 = f2();
        let k = Field::finite(2, 105).unwrap();
        let cubic = Poly::from_ints(&f2, &[1, 1, 0, 1]); // X^3+X+1
        let root = find_root(&cubic, &k, &mut rng).unwrap();
        assert_eq!(root.degree_over_prime().unwrap(), 3);
        assert!(lift_to(&cubic, &k).unwrap().eval(&root).is_zero());
    }

    #[test]
    fn find_root_norm_path_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let f2 = f2();
        let k = Field::finite(2, 30).unwrap(); // 2^30 elements: beyond the sweep
        for d in [2usize, 3, 5, 6] {
            let f = random_irreducible(&f2, d, &mut rng).unwrap();
            let root = find_root(&f, &k, &mut rng).unwrap();
            assert_eq!(root.degree_over_prime().unwrap(), d as u64);
            assert!(lift_to(&f, &k).unwrap().eval(&root).is_zero());
        }
    }

    #[test]
    fn prime_power_shape_examples() {
        let f2 = f2();
        let (p, l) = prime_power_shape(&Poly::from_ints(&f2, &[1, 0, 1, 0, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(p, Poly::from_ints(&f2, &[1, 1, 1]));
        assert_eq!(l, 2);

        let (p, l) = prime_power_shape(&Poly::from_ints(&f2, &[0, 0, 0, 1])).unwrap().unwrap();
        assert_eq!(p, Poly::x(&f2));
        assert_eq!(l, 3);
        let q = q();
        let (p, l) = prime_power_shape(&Poly::from_ints(&q, &[0, 0, 0, 1])).unwrap().unwrap();
        assert_eq!(p, Poly::x(&q));
        assert_eq!(l, 3);

        // X^2(X+1): two distinct irreducible factors.
        let f = &Poly::from_ints(&f2, &[0, 0, 1]) * &Poly::from_ints(&f2, &[1, 1]);
        assert!(prime_power_shape(&f).unwrap().is_none());

        // (X^2+1)^3 over Q and a non-prime-power over Q.
        let c = Poly::from_ints(&q, &[1, 0, 1]);
        let (p, l) = prime_power_shape(&c.pow(3)).unwrap().unwrap();
        assert_eq!((p, l), (c, 3));
        let r = Poly::from_ints(&q, &[-1, 0, 1]); // (X-1)(X+1)
        assert!(prime_power_shape(&r.pow(2)).unwrap().is_none());

        // Imperfect coefficient fields are refused outright.
        let kt = Field::rational_functions(&f2).unwrap();
        let f = &Poly::x(&kt).pow(2) + &Poly::constant(kt.t().unwrap());
        assert!(matches!(
            prime_power_shape(&f),
            Err(Error::ImperfectField { .. })
        ));
    }

    #[test]
    fn prime_power_shape_round_trip_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for field in [f2(), Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
            for _ in 0..25 {
                let d = 1 + (rng.gen::<u32>() % 4) as usize;
                let p = random_irreducible(&field, d, &mut rng).unwrap();
                let l = 1 + rng.gen::<u32>() % 5;
                let shape = prime_power_shape(&p.pow(l)).unwrap();
                assert_eq!(shape, Some((p, l)));
            }
        }
        // Fixed irreducibles over Q.
        let q = q();
        let irreducibles = [
            Poly::from_ints(&q, &[2, 1]),
            Poly::from_ints(&q, &[1, 0, 1]),
            Poly::from_ints(&q, &[-2, 0, 1]),
            Poly::from_ints(&q, &[-2, 0, 0, 1]),
        ];
        for p in &irreducibles {
            for l in 1..=3 {
                assert_eq!(prime_power_shape(&p.pow(l)).unwrap(), Some((p.clone(), l)));
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f2 = f2();
        let a = Poly::parse(&f2, "X^4+X^2+1").unwrap();
        let b = Poly::parse(&f2, "[1,0,1,0,1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(Poly::parse(&f2, &a.to_string()).unwrap(), a);

        let f4 = f4();
        let c = Poly::parse(&f4, "g*X+1").unwrap();
        let d = Poly::parse(&f4, "[[1,0],[0,1]]").unwrap();
        assert_eq!(c, d);
        assert_eq!(Poly::parse(&f4, &c.to_string()).unwrap(), c);

        let q = q();
        let e = Poly::parse(&q, "X^2-1/2").unwrap();
        assert_eq!(e, Poly::from_coeffs(&q, vec![
            q.parse_element("-1/2").unwrap(),
            q.zero(),
            q.one(),
        ]).unwrap());
        assert_eq!(Poly::parse(&q, &e.to_string()).unwrap(), e);

        let kt = Field::rational_functions(&f2).unwrap();
        let f = Poly::parse(&kt, "(t+1)*X^2+t").unwrap();
        assert_eq!(f.coeff(2), kt.parse_element("t+1").unwrap());
        assert_eq!(Poly::parse(&kt, &f.to_string()).unwrap(), f);

        // Z is accepted as the indeterminate too.
        assert_eq!(Poly::parse(&f2, "Z^2+Z+1").unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
    }

    #[test]
    fn arithmetic_basics_and_errors() {
        let f7 = Field::prime(7).unwrap();
        let f = Poly::from_ints(&f7, &[1, 0, 1]); // X^2+1
        assert_eq!(f.eval(&f7.int(3)), f7.int(3)); // 9+1 = 10 = 3 mod 7

        // Characteristic folds into the derivative.
        let f2 = f2();
        assert!(Poly::from_ints(&f2, &[1, 0, 1, 0, 1]).derivative().is_zero());
        let q = q();
        assert_eq!(
            Poly::from_ints(&q, &[1, 0, 1, 0, 1]).derivative(),
            Poly::from_ints(&q, &[0, 2, 0, 4])
        );

        assert!(matches!(
            Poly::one(&q).divrem(&Poly::zero(&q)),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            Poly::one(&q).divrem(&Poly::one(&f2)),
            Err(Error::FieldMismatch { .. })
        ));

        // pow_mod against long division.
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        let direct = Poly::from_ints(&f2, &[0, 1]).pow(8).rem(&m).unwrap();
        let fast = pow_mod(&Poly::x(&f2), &BigUint::from(8u32), &m).unwrap();
        assert_eq!(direct, fast);

        // divrem round-trip with random inputs.
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..40 {
            let a = random_poly(&f7, (rng.gen::<u32>() % 7) as usize, &mut rng);
            let mut b = random_poly(&f7, (rng.gen::<u32>() % 4) as usize, &mut rng);
            if b.is_zero() {
                b = Poly::one(&f7);
            }
            let (qq, r) = a.divrem(&b).unwrap();
            assert_eq!(&(&qq * &b) + &r, a);
            if let (Some(dr), Some(db)) = (r.degree(), b.degree()) {
                assert!(dr < db);
            }
        }
    }
}
