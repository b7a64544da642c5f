//! GF(p) on canonical u64 residues.

use rand::{Rng, RngCore};

use super::{zp, FieldDescriptor, FieldKernel, Payload};
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct PrimeKernel {
    p: u64,
    desc: FieldDescriptor,
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p >= zp::MAX_PRIME {
        return Err(Error::GuardExceeded {
            what: "prime modulus".into(),
            limit: zp::MAX_PRIME,
            actual: p,
        });
    }
    if !zp::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

impl PrimeKernel {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeKernel {
            p,
            desc: FieldDescriptor::Prime { p },
        })
    }
}

fn int(a: &Payload) -> u64 {
    match a {
        Payload::Int(v) => *v,
        other => unreachable!("prime field got payload {other:?}"),
    }
}

impl FieldKernel for PrimeKernel {
    fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree_over_prime(&self) -> Option<u64> {
        Some(1)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn zero(&self) -> Payload {
        Payload::Int(0)
    }

    fn one(&self) -> Payload {
        Payload::Int(1 % self.p)
    }

    fn from_i64(&self, n: i64) -> Payload {
        Payload::Int(zp::of_i64(self.p, n))
    }

    fn add(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Int(zp::add(self.p, int(a), int(b)))
    }

    fn sub(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Int(zp::sub(self.p, int(a), int(b)))
    }

    fn neg(&self, a: &Payload) -> Payload {
        Payload::Int(zp::neg(self.p, int(a)))
    }

    fn mul(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Int(zp::mul(self.p, int(a), int(b)))
    }

    fn inv(&self, a: &Payload) -> Result<Payload> {
        let v = int(a);
        if v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Payload::Int(zp::inv(self.p, v)))
    }

    fn is_zero(&self, a: &Payload) -> bool {
        int(a) == 0
    }

    fn frobenius(&self, a: &Payload) -> Result<Payload> {
        // x^p = x on the prime field
        Ok(a.clone())
    }

    fn pth_root(&self, a: &Payload) -> Result<Payload> {
        Ok(a.clone())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Payload {
        Payload::Int(rng.gen_range(0..self.p))
    }

    fn element_count(&self) -> Option<u64> {
        Some(self.p)
    }

    fn element_at(&self, index: u64) -> Payload {
        assert!(index < self.p, "element index out of range");
        Payload::Int(index)
    }

    fn format(&self, a: &Payload) -> String {
        int(a).to_string()
    }
}
