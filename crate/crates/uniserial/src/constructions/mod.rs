//! Reference constructions with machine-checked certificates.
//!
//! Three builders produce explicit instances of the phenomena the rest of
//! the crate reasons about, each bundled with a [`Certificate`] — an ordered
//! list of named claims, every one re-verified by an independent code path
//! (Frobenius-orbit degrees, Krylov minimal polynomials, entrywise matrix
//! identities):
//!
//!   - [`unomas`]: two elements of a large finite field F_{q^t} that
//!     together generate it while **no** F_q-linear combination does —
//!     sharpness of the field-size bound for combination generators.
//!   - [`pedo`]: a degree-p² Artin–Schreier-style extension of F_{p²}(X)
//!     where the degree of x + b·y depends on which coset b sits in, so a
//!     combination can collapse even over an intersection-trivial pair.
//!   - [`menti`]: a commutative algebra of dimension 2p over the imperfect
//!     field F_p(t) acting faithfully and uniserially with *no* single
//!     generator, driven by the failure of Jordan–Chevalley uniqueness.
//!
//! Builders never mask a failed check: each claim records honestly whether
//! it passed, and [`Certificate::all_pass`] is what tests and the CLI gate
//! on.  Builders are deterministic given a seed.

pub mod menti;
pub mod pedo;
pub mod unomas;

pub use menti::{build_menti, MentiInstance};
pub use pedo::{build_pedo, PedoInstance};
pub use unomas::{build_unomas, UnomasInstance};

use crate::error::Result;

// ---- certificates ----

/// One verified statement about a constructed instance.
#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Ordered list of claims.  Construction functions return a certificate
/// even when a claim fails; callers decide how loud to be about it.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub claims: Vec<Claim>,
}

impl Certificate {
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.claims.push(Claim {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.pass).collect()
    }
}

// ---- name-indexed registry ----

/// Uniform parameter bag so the registry can drive any builder: `q` and
/// `prime_count` feed `unomas`, `p` feeds `pedo` and `menti`, `seed` feeds
/// every randomized planting step.
#[derive(Clone, Debug)]
pub struct BuildParams {
    pub q: u64,
    pub prime_count: u64,
    pub p: u64,
    pub seed: u64,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            q: 2,
            prime_count: 1,
            p: 2,
            seed: 0,
        }
    }
}

/// A named construction the CLI can dispatch on.  `facts` is a key/value
/// echo of the instance parameters and headline numbers; the certificate
/// carries the checked claims.
pub trait Construction {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn build(&self, params: &BuildParams) -> Result<(Vec<(String, String)>, Certificate)>;
}

pub fn registry() -> Vec<Box<dyn Construction>> {
    vec![
        Box::new(unomas::Unomas),
        Box::new(pedo::Pedo),
        Box::new(menti::Menti),
    ]
}

pub fn by_name(name: &str) -> Option<Box<dyn Construction>> {
    registry().into_iter().find(|c| c.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lists_all_constructions() {
        let names: Vec<&str> = registry().iter().map(|c| c.name()).collect();
        assert_eq!(names, vec!["unomas", "pedo", "menti"]);
        assert!(by_name("pedo").is_some());
        assert!(by_name("nonexistent").is_none());
        for c in registry() {
            assert!(!c.summary().is_empty());
        }
    }
}
