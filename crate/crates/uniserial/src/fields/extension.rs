//! GF(p)[X]/(m) on fixed-length coordinate vectors over Z/p.

use rand::{Rng, RngCore};

use super::{prime, zp, FieldDescriptor, FieldKernel, Payload};
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct ExtensionKernel {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    desc: FieldDescriptor,
}

impl ExtensionKernel {
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        prime::check_prime(p)?;
        let m = zp::ptrim(modulus.to_vec());
        if m.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficients must be reduced mod p".into(),
            ));
        }
        if m.len() < 3 {
            return Err(Error::InvalidField(
                "extension modulus must have degree >= 2".into(),
            ));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::InvalidField("extension modulus must be monic".into()));
        }
        if !zp::pirreducible(p, &m) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over GF({p})",
                super::fmt_zp_poly(&m, "X")
            )));
        }
        let k = m.len() - 1;
        Ok(ExtensionKernel {
            p,
            k,
            desc: FieldDescriptor::Extension {
                p,
                modulus: m.clone(),
            },
            modulus: m,
        })
    }

    fn coords<'a>(&self, a: &'a Payload) -> &'a [u64] {
        match a {
            Payload::Coords(v) => {
                debug_assert_eq!(v.len(), self.k);
                v
            }
            other => unreachable!("extension field got payload {other:?}"),
        }
    }

    fn pad(&self, mut v: Vec<u64>) -> Payload {
        v.resize(self.k, 0);
        Payload::Coords(v)
    }
}

impl FieldKernel for ExtensionKernel {
    fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree_over_prime(&self) -> Option<u64> {
        Some(self.k as u64)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn zero(&self) -> Payload {
        Payload::Coords(vec![0; self.k])
    }

    fn one(&self) -> Payload {
        let mut v = vec![0; self.k];
        v[0] = 1;
        Payload::Coords(v)
    }

    fn from_i64(&self, n: i64) -> Payload {
        let mut v = vec![0; self.k];
        v[0] = zp::of_i64(self.p, n);
        Payload::Coords(v)
    }

    fn add(&self, a: &Payload, b: &Payload) -> Payload {
        let (a, b) = (self.coords(a), self.coords(b));
        Payload::Coords(
            a.iter()
                .zip(b)
                .map(|(&x, &y)| zp::add(self.p, x, y))
                .collect(),
        )
    }

    fn sub(&self, a: &Payload, b: &Payload) -> Payload {
        let (a, b) = (self.coords(a), self.coords(b));
        Payload::Coords(
            a.iter()
                .zip(b)
                .map(|(&x, &y)| zp::sub(self.p, x, y))
                .collect(),
        )
    }

    fn neg(&self, a: &Payload) -> Payload {
        Payload::Coords(self.coords(a).iter().map(|&x| zp::neg(self.p, x)).collect())
    }

    fn mul(&self, a: &Payload, b: &Payload) -> Payload {
        let a = zp::ptrim(self.coords(a).to_vec());
        let b = zp::ptrim(self.coords(b).to_vec());
        self.pad(zp::pmulmod(self.p, &a, &b, &self.modulus))
    }

    fn inv(&self, a: &Payload) -> Result<Payload> {
        let a = zp::ptrim(self.coords(a).to_vec());
        if a.is_empty() {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid against the modulus
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = zp::pdivrem(self.p, &r0, &r1);
            let nt = zp::psub(self.p, &t0, &zp::pmul(self.p, &q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = nt;
        }
        debug_assert_eq!(r0.len(), 1, "irreducible modulus => gcd is a unit");
        Ok(self.pad(zp::pscale(self.p, zp::inv(self.p, r0[0]), &t0)))
    }

    fn is_zero(&self, a: &Payload) -> bool {
        self.coords(a).iter().all(|&c| c == 0)
    }

    fn frobenius(&self, a: &Payload) -> Result<Payload> {
        let a = zp::ptrim(self.coords(a).to_vec());
        Ok(self.pad(zp::ppowmod(self.p, &a, self.p, &self.modulus)))
    }

    fn pth_root(&self, a: &Payload) -> Result<Payload> {
        // Frobenius is a bijection; apply it k-1 times to invert one step
        let mut out = a.clone();
        for _ in 0..self.k - 1 {
            out = self.frobenius(&out)?;
        }
        Ok(out)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Payload {
        Payload::Coords((0..self.k).map(|_| rng.gen_range(0..self.p)).collect())
    }

    fn element_count(&self) -> Option<u64> {
        let mut n: u64 = 1;
        for _ in 0..self.k {
            n = n.checked_mul(self.p)?;
        }
        Some(n)
    }

    fn element_at(&self, index: u64) -> Payload {
        let mut v = vec![0u64; self.k];
        let mut rest = index;
        for c in v.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        assert!(rest == 0, "element index out of range");
        Payload::Coords(v)
    }

    fn format(&self, a: &Payload) -> String {
        let v = self.coords(a);
        // Trailing zero coordinates carry no information and constants are
        // friendlier bare; both short forms parse back to the same element.
        let last = v.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last == 0 {
            return v[0].to_string();
        }
        let inner: Vec<String> = v[..=last].iter().map(|c| c.to_string()).collect();
        format!("[{}]", inner.join(","))
    }
}
