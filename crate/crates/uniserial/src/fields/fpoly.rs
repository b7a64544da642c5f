//! Polynomials over a small finite field, with coefficients coded as
//! fixed-length coordinate vectors over Z/p.
//!
//! The rational function field kernel does all its reduction and gcd work
//! here, on bare `Vec<u64>` coordinates, rather than going through the public
//! element type. A coefficient is always a vector of length k (k = 1 for a
//! prime base), and a polynomial is a little-endian `Vec` of coefficients with
//! no trailing zero coefficient.

use super::zp;

/// A prime field or a single-step extension of one, described concretely
/// enough for coordinate arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBase {
    pub p: u64,
    /// Monic irreducible modulus over Z/p for an extension; `None` for the
    /// prime field itself.
    pub modulus: Option<Vec<u64>>,
}

impl FBase {
    pub fn k(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.k()]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[0] = 1 % self.p;
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| zp::add(self.p, x, y))
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| zp::sub(self.p, x, y))
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| zp::neg(self.p, x)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        match &self.modulus {
            None => vec![zp::mul(self.p, a[0], b[0])],
            Some(m) => {
                let prod = zp::pmulmod(self.p, &zp::ptrim(a.to_vec()), &zp::ptrim(b.to_vec()), m);
                self.pad(prod)
            }
        }
    }

    /// Inverse; panics on zero (callers check).
    pub fn inv(&self, a: &[u64]) -> Vec<u64> {
        assert!(!self.is_zero(a), "inverse of zero");
        match &self.modulus {
            None => vec![zp::inv(self.p, a[0])],
            Some(m) => {
                // extended Euclid in Z/p[x] against the modulus
                let a = zp::ptrim(a.to_vec());
                let (mut r0, mut r1) = (m.clone(), a);
                let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
                while !r1.is_empty() {
                    let (q, r) = zp::pdivrem(self.p, &r0, &r1);
                    let nt = zp::psub(self.p, &t0, &zp::pmul(self.p, &q, &t1));
                    r0 = r1;
                    r1 = r;
                    t0 = t1;
                    t1 = nt;
                }
                debug_assert_eq!(r0.len(), 1, "modulus not irreducible?");
                let c = zp::inv(self.p, r0[0]);
                self.pad(zp::pscale(self.p, c, &t0))
            }
        }
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// p-th root, which always exists in a finite field: the Frobenius is a
    /// bijection and x -> x^(p^(k-1)) inverts it.
    pub fn pth_root(&self, a: &[u64]) -> Vec<u64> {
        let k = self.k() as u32;
        if k == 1 {
            return a.to_vec(); // x^p = x in Z/p
        }
        let mut out = a.to_vec();
        for _ in 0..k - 1 {
            out = self.pow(&out, self.p);
        }
        out
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.k(), 0);
        v
    }
}

// ---- polynomials with FBase coefficients ----

pub type FPoly = Vec<Vec<u64>>;

pub fn trim(base: &FBase, mut f: FPoly) -> FPoly {
    while f.last().is_some_and(|c| base.is_zero(c)) {
        f.pop();
    }
    f
}

pub fn is_zero(f: &FPoly) -> bool {
    f.is_empty()
}

pub fn deg(f: &FPoly) -> usize {
    debug_assert!(!f.is_empty());
    f.len() - 1
}

pub fn constant(base: &FBase, c: Vec<u64>) -> FPoly {
    if base.is_zero(&c) {
        Vec::new()
    } else {
        vec![c]
    }
}

pub fn add(base: &FBase, f: &FPoly, g: &FPoly) -> FPoly {
    let n = f.len().max(g.len());
    let z = base.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).unwrap_or(&z);
        let b = g.get(i).unwrap_or(&z);
        out.push(base.add(a, b));
    }
    trim(base, out)
}

pub fn sub(base: &FBase, f: &FPoly, g: &FPoly) -> FPoly {
    let n = f.len().max(g.len());
    let z = base.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).unwrap_or(&z);
        let b = g.get(i).unwrap_or(&z);
        out.push(base.sub(a, b));
    }
    trim(base, out)
}

pub fn neg(base: &FBase, f: &FPoly) -> FPoly {
    f.iter().map(|c| base.neg(c)).collect()
}

pub fn scale(base: &FBase, c: &[u64], f: &FPoly) -> FPoly {
    if base.is_zero(c) {
        return Vec::new();
    }
    f.iter().map(|a| base.mul(a, c)).collect()
}

pub fn mul(base: &FBase, f: &FPoly, g: &FPoly) -> FPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if base.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if base.is_zero(b) {
                continue;
            }
            out[i + j] = base.add(&out[i + j], &base.mul(a, b));
        }
    }
    trim(base, out)
}

pub fn divrem(base: &FBase, f: &FPoly, g: &FPoly) -> (FPoly, FPoly) {
    assert!(!g.is_empty(), "division by zero polynomial");
    if f.len() < g.len() {
        return (Vec::new(), f.clone());
    }
    let lead_inv = base.inv(g.last().unwrap());
    let mut rem = f.clone();
    let mut quo = vec![base.zero(); f.len() - g.len() + 1];
    for i in (0..quo.len()).rev() {
        let top = rem[i + g.len() - 1].clone();
        if base.is_zero(&top) {
            continue;
        }
        let c = base.mul(&top, &lead_inv);
        for (j, gc) in g.iter().enumerate() {
            if !base.is_zero(gc) {
                let t = base.mul(&c, gc);
                rem[i + j] = base.sub(&rem[i + j], &t);
            }
        }
        quo[i] = c;
    }
    (trim(base, quo), trim(base, rem))
}

pub fn rem(base: &FBase, f: &FPoly, g: &FPoly) -> FPoly {
    divrem(base, f, g).1
}

pub fn monic(base: &FBase, f: &FPoly) -> FPoly {
    match f.last() {
        None => Vec::new(),
        Some(lead) => {
            if base.is_zero(&base.sub(lead, &base.one())) {
                f.clone()
            } else {
                scale(base, &base.inv(lead), f)
            }
        }
    }
}

pub fn gcd(base: &FBase, f: &FPoly, g: &FPoly) -> FPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_empty() {
        let r = rem(base, &a, &b);
        a = b;
        b = r;
    }
    monic(base, &a)
}

pub fn eval(base: &FBase, f: &FPoly, x: &[u64]) -> Vec<u64> {
    let mut acc = base.zero();
    for c in f.iter().rev() {
        acc = base.add(&base.mul(&acc, x), c);
    }
    acc
}
