//! K(t) for a finite K: reduced fractions of polynomials in t.
//!
//! This is the one imperfect field in the crate. Frobenius still makes sense
//! (it is just powering), but it is not surjective: t has no p-th root, and
//! `pth_root` reports exactly when that bites.

use rand::{Rng, RngCore};

use super::fpoly::{self, FBase, FPoly};
use super::{fmt_zp_poly, zp, Field, FieldDescriptor, FieldKernel, Payload, RatFn};
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct RatFuncKernel {
    base: FBase,
    desc: FieldDescriptor,
}

impl RatFuncKernel {
    pub fn new(base_field: &Field) -> Result<Self> {
        let (base, base_desc) = match base_field.descriptor() {
            FieldDescriptor::Prime { p } => (
                FBase {
                    p: *p,
                    modulus: None,
                },
                FieldDescriptor::Prime { p: *p },
            ),
            FieldDescriptor::Extension { p, modulus } => (
                FBase {
                    p: *p,
                    modulus: Some(modulus.clone()),
                },
                FieldDescriptor::Extension {
                    p: *p,
                    modulus: modulus.clone(),
                },
            ),
            other => {
                return Err(Error::InvalidField(format!(
                    "rational function fields need a finite base, not {other}"
                )))
            }
        };
        Ok(RatFuncKernel {
            base,
            desc: FieldDescriptor::RationalFunctions {
                base: Box::new(base_desc),
            },
        })
    }

    fn fr<'a>(&self, a: &'a Payload) -> &'a RatFn {
        match a {
            Payload::RatFn(r) => r,
            other => unreachable!("rational function field got payload {other:?}"),
        }
    }

    /// Canonical form: reduce by the gcd, make the denominator monic, pin the
    /// zero element to 0/1.
    fn reduced(&self, num: FPoly, den: FPoly) -> Payload {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Payload::RatFn(Box::new(RatFn {
                num,
                den: vec![self.base.one()],
            }));
        }
        let g = fpoly::gcd(&self.base, &num, &den);
        let (num, den) = if fpoly::deg(&g) > 0 {
            (
                fpoly::divrem(&self.base, &num, &g).0,
                fpoly::divrem(&self.base, &den, &g).0,
            )
        } else {
            (num, den)
        };
        // monic denominator: divide both by den's leading coefficient
        let lead = den.last().unwrap().clone();
        if self.base.is_zero(&self.base.sub(&lead, &self.base.one())) {
            Payload::RatFn(Box::new(RatFn { num, den }))
        } else {
            let li = self.base.inv(&lead);
            Payload::RatFn(Box::new(RatFn {
                num: fpoly::scale(&self.base, &li, &num),
                den: fpoly::scale(&self.base, &li, &den),
            }))
        }
    }

    fn fmt_poly(&self, f: &FPoly) -> String {
        if f.is_empty() {
            return "0".into();
        }
        if self.base.modulus.is_none() {
            let flat: Vec<u64> = f.iter().map(|c| c[0]).collect();
            return fmt_zp_poly(&flat, "t");
        }
        let mut parts = Vec::new();
        for (i, c) in f.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            // same short forms as extension elements: drop trailing zero
            // coordinates, render constants bare
            let last = c.iter().rposition(|&x| x != 0).unwrap_or(0);
            let cs = if last == 0 {
                c[0].to_string()
            } else {
                let inner: Vec<String> =
                    c[..=last].iter().map(u64::to_string).collect();
                format!("[{}]", inner.join(","))
            };
            let is_one = self.base.is_zero(&self.base.sub(c, &self.base.one()));
            let s = match (i, is_one) {
                (0, _) => cs,
                (1, true) => "t".into(),
                (1, false) => format!("{cs}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{cs}*t^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

fn base_of(kernel: &dyn FieldKernel) -> FBase {
    match kernel.descriptor().clone() {
        FieldDescriptor::RationalFunctions { base } => match *base {
            FieldDescriptor::Prime { p } => FBase { p, modulus: None },
            FieldDescriptor::Extension { p, modulus } => FBase {
                p,
                modulus: Some(modulus),
            },
            _ => unreachable!(),
        },
        _ => unreachable!("not a rational function field"),
    }
}

pub(crate) fn variable_payload(kernel: &dyn FieldKernel) -> Payload {
    // t = (0 + 1*t) / 1 in the base coding
    let base = base_of(kernel);
    Payload::RatFn(Box::new(RatFn {
        num: vec![base.zero(), base.one()],
        den: vec![base.one()],
    }))
}

/// The generator of an extension base, as a constant of the function field.
pub(crate) fn lift_base_generator(field: &Field) -> super::FieldElement {
    let base = base_of(field.kernel());
    let mut coords = base.zero();
    coords[1] = 1;
    field.wrap(Payload::RatFn(Box::new(RatFn {
        num: vec![coords],
        den: vec![base.one()],
    })))
}

impl FieldKernel for RatFuncKernel {
    fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    fn characteristic(&self) -> u64 {
        self.base.p
    }

    fn degree_over_prime(&self) -> Option<u64> {
        None
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn is_perfect(&self) -> bool {
        false
    }

    fn zero(&self) -> Payload {
        Payload::RatFn(Box::new(RatFn {
            num: Vec::new(),
            den: vec![self.base.one()],
        }))
    }

    fn one(&self) -> Payload {
        Payload::RatFn(Box::new(RatFn {
            num: vec![self.base.one()],
            den: vec![self.base.one()],
        }))
    }

    fn from_i64(&self, n: i64) -> Payload {
        let c = zp::of_i64(self.base.p, n);
        let mut v = self.base.zero();
        v[0] = c;
        Payload::RatFn(Box::new(RatFn {
            num: fpoly::constant(&self.base, v),
            den: vec![self.base.one()],
        }))
    }

    fn add(&self, a: &Payload, b: &Payload) -> Payload {
        let (a, b) = (self.fr(a), self.fr(b));
        let num = fpoly::add(
            &self.base,
            &fpoly::mul(&self.base, &a.num, &b.den),
            &fpoly::mul(&self.base, &b.num, &a.den),
        );
        let den = fpoly::mul(&self.base, &a.den, &b.den);
        self.reduced(num, den)
    }

    fn sub(&self, a: &Payload, b: &Payload) -> Payload {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Payload) -> Payload {
        let a = self.fr(a);
        Payload::RatFn(Box::new(RatFn {
            num: fpoly::neg(&self.base, &a.num),
            den: a.den.clone(),
        }))
    }

    fn mul(&self, a: &Payload, b: &Payload) -> Payload {
        let (a, b) = (self.fr(a), self.fr(b));
        // cross-reduce first to keep intermediate degrees down
        let num = fpoly::mul(&self.base, &a.num, &b.num);
        let den = fpoly::mul(&self.base, &a.den, &b.den);
        self.reduced(num, den)
    }

    fn inv(&self, a: &Payload) -> Result<Payload> {
        let a = self.fr(a);
        if a.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduced(a.den.clone(), a.num.clone()))
    }

    fn is_zero(&self, a: &Payload) -> bool {
        self.fr(a).num.is_empty()
    }

    fn frobenius(&self, a: &Payload) -> Result<Payload> {
        // plain powering by p; injective but not surjective here
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = self.base.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    fn pth_root(&self, a: &Payload) -> Result<Payload> {
        let f = self.fr(a);
        let p = self.base.p as usize;
        let root_of = |g: &FPoly| -> Option<FPoly> {
            // g must live in K[t^p]; base coefficients always have p-th roots
            let mut out = Vec::new();
            for (i, c) in g.iter().enumerate() {
                if i % p == 0 {
                    out.push(self.base.pth_root(c));
                } else if !self.base.is_zero(c) {
                    return None;
                }
            }
            Some(fpoly::trim(&self.base, out))
        };
        match (root_of(&f.num), root_of(&f.den)) {
            (Some(n), Some(d)) => Ok(self.reduced(n, d)),
            _ => Err(Error::NoPthRoot {
                element: self.format(a),
                field: self.desc.to_string(),
            }),
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Payload {
        let mut poly = |deg: usize| -> FPoly {
            let mut f = Vec::new();
            for _ in 0..=deg {
                f.push(
                    (0..self.base.k())
                        .map(|_| rng.gen_range(0..self.base.p))
                        .collect(),
                );
            }
            fpoly::trim(&self.base, f)
        };
        let num = poly(2);
        let mut den = poly(1);
        if den.is_empty() {
            den = vec![self.base.one()];
        }
        self.reduced(num, den)
    }

    fn element_count(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> Payload {
        panic!("rational function fields are not enumerable")
    }

    fn format(&self, a: &Payload) -> String {
        let f = self.fr(a);
        if f.num.is_empty() {
            return "0".into();
        }
        let num = self.fmt_poly(&f.num);
        if f.den.len() == 1 {
            return num;
        }
        let den = self.fmt_poly(&f.den);
        let wrap = |s: String| {
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num), wrap(den))
    }
}
