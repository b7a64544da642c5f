//! The rationals, on `BigRational`. Arbitrary precision, characteristic 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{FieldDescriptor, FieldKernel, Payload};
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct RationalsKernel {
    desc: FieldDescriptor,
}

impl RationalsKernel {
    pub fn new() -> Self {
        RationalsKernel {
            desc: FieldDescriptor::Rationals,
        }
    }
}

fn rat(a: &Payload) -> &BigRational {
    match a {
        Payload::Rat(r) => r,
        other => unreachable!("rationals got payload {other:?}"),
    }
}

impl FieldKernel for RationalsKernel {
    fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn degree_over_prime(&self) -> Option<u64> {
        None
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn zero(&self) -> Payload {
        Payload::Rat(BigRational::zero())
    }

    fn one(&self) -> Payload {
        Payload::Rat(BigRational::one())
    }

    fn from_i64(&self, n: i64) -> Payload {
        Payload::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    fn add(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Rat(rat(a) + rat(b))
    }

    fn sub(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Rat(rat(a) - rat(b))
    }

    fn neg(&self, a: &Payload) -> Payload {
        Payload::Rat(-rat(a))
    }

    fn mul(&self, a: &Payload, b: &Payload) -> Payload {
        Payload::Rat(rat(a) * rat(b))
    }

    fn inv(&self, a: &Payload) -> Result<Payload> {
        let r = rat(a);
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Payload::Rat(r.recip()))
    }

    fn is_zero(&self, a: &Payload) -> bool {
        rat(a).is_zero()
    }

    fn frobenius(&self, _a: &Payload) -> Result<Payload> {
        Err(Error::NotFinite {
            op: "Frobenius".into(),
            field: "Q".into(),
        })
    }

    fn pth_root(&self, _a: &Payload) -> Result<Payload> {
        Err(Error::NotFinite {
            op: "p-th root".into(),
            field: "Q".into(),
        })
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Payload {
        // small heights keep downstream exact arithmetic honest but cheap
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=4);
        Payload::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn element_count(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> Payload {
        panic!("the rationals are not enumerable")
    }

    fn format(&self, a: &Payload) -> String {
        let r = rat(a);
        if r.denom().is_one() {
            r.numer().to_string()
        } else if r.denom().is_negative() {
            // BigRational keeps denominators positive, but be defensive
            format!("{}/{}", -r.numer(), -r.denom())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}
