//! Two field elements that generate jointly but never through a linear
//! combination.
//!
//! Over F = F_q pick distinct primes, all different from the
//! characteristic: one prime p_i for every nonzero i ∈ F, two more r and s,
//! and optionally extra primes to raise the prime-count target.  Let t be
//! their product and K = F_{q^t}.  Plant elements u_i, x₀, y₀ (and v_j) of
//! degrees p_i, r, s (q_j) over F and set
//!
//! ```text
//! x = Σ i·u_i + x₀ (+ Σ v_j),     y = Σ u_i + y₀ (+ Σ v_j).
//! ```
//!
//! A sum of elements of pairwise coprime degrees — all prime to the
//! characteristic — has degree equal to the product of the degrees, so
//! deg x = t/s, deg y = t/r, and lcm(deg x, deg y) = t: together x and y
//! generate K.  But any combination βx + γy with β, γ ≠ 0 cancels exactly
//! one planted term, the u_i at i = −γ/β, and its degree collapses to
//! t/p_i < t.  So no combination generates, even though the number of
//! obstructing primes is exactly the designed target.
//!
//! Every degree claim is re-verified through Frobenius orbits on the built
//! elements; nothing is trusted from the construction itself.

use num_integer::lcm;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::constructions::Certificate;
use crate::error::{Error, Result};
use crate::fields::{zp, Field, FieldElement};
use crate::poly::{find_root, random_irreducible};
use crate::primelt::subfield_nonzero_elements;

/// Everything the guard allows at desk scale: the extension degree t.
const T_GUARD: u64 = 1000;

/// A built instance together with its certificate.
#[derive(Clone, Debug)]
pub struct UnomasInstance {
    pub q: u64,
    /// Number of obstructing primes (the target A ≥ q − 1).
    pub prime_count: u64,
    /// The primes p_i, aligned index-for-index with `units`.
    pub primes: Vec<u64>,
    pub extras: Vec<u64>,
    pub r: u64,
    pub s: u64,
    /// Degree of K over F: t = (Π p_i)·r·s·(Π extras).
    pub t: u64,
    /// K = F_{q^t}.
    pub field: Field,
    /// The nonzero elements of F inside K, aligned with `primes`.
    pub units: Vec<FieldElement>,
    pub x: FieldElement,
    pub y: FieldElement,
    /// deg x = t/s and deg y = t/r over F.
    pub a: u64,
    pub b: u64,
    /// (β, γ, deg(βx + γy)) for every β, γ ∈ F^×.
    pub sweep: Vec<(FieldElement, FieldElement, u64)>,
    pub certificate: Certificate,
}

/// The prime schedule for a given q and prime-count target, plus t.
///
/// Smallest-first and deterministic; the characteristic is excluded so the
/// coprime-degree product rule holds for every partial sum.  Errors with
/// `GuardExceeded` when t would pass the desk-scale guard.
pub fn select_primes(q: u64, prime_count: u64) -> Result<(Vec<u64>, u64, u64, Vec<u64>, u64)> {
    let factors = zp::prime_factors(q);
    if q < 2 || factors.len() != 1 {
        return Err(Error::InvalidField(format!("{q} is not a prime power")));
    }
    let ch = factors[0];
    if prime_count < q - 1 {
        return Err(Error::Shape(format!(
            "prime-count target {prime_count} is below the minimum q - 1 = {}",
            q - 1
        )));
    }
    let needed = (prime_count + 2) as usize;
    let mut pool = Vec::with_capacity(needed);
    let mut c = 2u64;
    while pool.len() < needed {
        if zp::is_prime(c) && c != ch {
            pool.push(c);
        }
        c += 1;
        if c > 10_000 {
            return Err(Error::Internal("prime pool exhausted".into()));
        }
    }
    let unit_count = (q - 1) as usize;
    let primes = pool[..unit_count].to_vec();
    let r = pool[unit_count];
    let s = pool[unit_count + 1];
    let extras = pool[unit_count + 2..].to_vec();
    let mut t: u64 = 1;
    for p in primes.iter().chain(extras.iter()).chain([&r, &s]) {
        t = t.saturating_mul(*p);
    }
    if t > T_GUARD {
        return Err(Error::GuardExceeded {
            what: "field degree t of the two-element instance".into(),
            limit: T_GUARD,
            actual: t,
        });
    }
    Ok((primes, r, s, extras, t))
}

pub fn build_unomas(q: u64, prime_count: u64, seed: u64) -> Result<UnomasInstance> {
    let (primes, r, s, extras, t) = select_primes(q, prime_count)?;
    let ch = zp::prime_factors(q)[0];
    let mut k = 0u64;
    let mut m = 1u64;
    while m < q {
        m *= ch;
        k += 1;
    }
    let k = k.max(1);

    let field = Field::finite(ch, k * t)?;
    let prime_field = Field::prime(ch)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cert = Certificate::default();

    // An element of the requested degree over F = F_q: a root of an
    // irreducible of degree k·deg over the prime field generates
    // F_{q^deg} over F_q exactly.
    let plant = |deg: u64, rng: &mut ChaCha8Rng| -> Result<FieldElement> {
        let f = random_irreducible(&prime_field, (k * deg) as usize, rng)?;
        find_root(&f, &field, rng)
    };

    let units = subfield_nonzero_elements(&field, k)?;
    if units.len() != (q - 1) as usize {
        return Err(Error::Internal("subfield unit count mismatch".into()));
    }

    let planted_u: Vec<FieldElement> = primes
        .iter()
        .map(|p| plant(*p, &mut rng))
        .collect::<Result<_>>()?;
    let x0 = plant(r, &mut rng)?;
    let y0 = plant(s, &mut rng)?;
    let planted_v: Vec<FieldElement> = extras
        .iter()
        .map(|p| plant(*p, &mut rng))
        .collect::<Result<_>>()?;

    for (u, p) in planted_u.iter().zip(&primes) {
        let d = u.degree_over_subfield(k)?;
        cert.push(
            "planted_degree",
            d == *p,
            format!("planted element has degree {d} over F, wanted {p}"),
        );
    }
    cert.push(
        "planted_degree_r",
        x0.degree_over_subfield(k)? == r,
        format!("x-anchor has degree {r}"),
    );
    cert.push(
        "planted_degree_s",
        y0.degree_over_subfield(k)? == s,
        format!("y-anchor has degree {s}"),
    );
    for (v, p) in planted_v.iter().zip(&extras) {
        let d = v.degree_over_subfield(k)?;
        cert.push(
            "planted_degree_extra",
            d == *p,
            format!("extra element has degree {d} over F, wanted {p}"),
        );
    }

    let mut x = x0.clone();
    for (i, u) in units.iter().zip(&planted_u) {
        x = &x + &(i * u);
    }
    let mut y = y0.clone();
    for u in &planted_u {
        y = &y + u;
    }
    for v in &planted_v {
        x = &x + v;
        y = &y + v;
    }

    let a = t / s;
    let b = t / r;
    let deg_x = x.degree_over_subfield(k)?;
    let deg_y = y.degree_over_subfield(k)?;
    cert.push(
        "degree_x",
        deg_x == a,
        format!("deg x = {deg_x}, expected t/s = {a}"),
    );
    cert.push(
        "degree_y",
        deg_y == b,
        format!("deg y = {deg_y}, expected t/r = {b}"),
    );
    cert.push(
        "joint_generation",
        lcm(deg_x, deg_y) == t,
        format!("lcm(deg x, deg y) = {} fills the whole degree t = {t}", lcm(deg_x, deg_y)),
    );

    // Every combination βx + γy cancels the planted term at i = −γ/β, so
    // its degree must be exactly t/p_i — in particular strictly below t,
    // while still divisible by r·s.
    let mut sweep = Vec::new();
    let mut all_short = true;
    let mut all_exact = true;
    let mut all_divisible = true;
    for beta in &units {
        for gamma in &units {
            let z = &(beta * &x) + &(gamma * &y);
            let deg = z.degree_over_subfield(k)?;
            let dropped = -&gamma.div(beta)?;
            let idx = units
                .iter()
                .position(|u| *u == dropped)
                .ok_or_else(|| Error::Internal("cancelled coefficient is not a unit".into()))?;
            all_exact &= deg == t / primes[idx];
            all_short &= deg < t;
            all_divisible &= deg % (r * s) == 0;
            sweep.push((beta.clone(), gamma.clone(), deg));
        }
    }
    cert.push(
        "combination_degrees_exact",
        all_exact,
        "each βx + γy has degree t/p_i for the cancelled prime p_i",
    );
    cert.push(
        "no_combination_generates",
        all_short && deg_x < t && deg_y < t,
        "every F-combination of x and y has degree < t",
    );
    cert.push(
        "combination_degrees_divisible",
        all_divisible,
        format!("every swept degree is a multiple of r·s = {}", r * s),
    );

    Ok(UnomasInstance {
        q,
        prime_count,
        primes,
        extras,
        r,
        s,
        t,
        field,
        units,
        x,
        y,
        a,
        b,
        sweep,
        certificate: cert,
    })
}

// ---- registry adapter ----

pub struct Unomas;

impl crate::constructions::Construction for Unomas {
    fn name(&self) -> &'static str {
        "unomas"
    }

    fn summary(&self) -> &'static str {
        "two elements of F_{q^t} that generate jointly while every F_q-linear \
         combination lands in a proper subfield"
    }

    fn build(
        &self,
        params: &crate::constructions::BuildParams,
    ) -> Result<(Vec<(String, String)>, Certificate)> {
        let inst = build_unomas(params.q, params.prime_count, params.seed)?;
        let mut facts = vec![
            ("q".to_string(), inst.q.to_string()),
            ("prime_count".to_string(), inst.prime_count.to_string()),
            ("primes".to_string(), format!("{:?}", inst.primes)),
            ("r".to_string(), inst.r.to_string()),
            ("s".to_string(), inst.s.to_string()),
            ("extras".to_string(), format!("{:?}", inst.extras)),
            ("t".to_string(), inst.t.to_string()),
            ("field".to_string(), inst.field.to_string()),
            ("deg_x".to_string(), inst.a.to_string()),
            ("deg_y".to_string(), inst.b.to_string()),
        ];
        for (beta, gamma, deg) in &inst.sweep {
            facts.push((format!("deg({beta}·x + {gamma}·y)"), deg.to_string()));
        }
        Ok((facts, inst.certificate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_binary_instance() {
        let inst = build_unomas(2, 1, 5).unwrap();
        assert_eq!(inst.primes, vec![3]);
        assert_eq!((inst.r, inst.s), (5, 7));
        assert_eq!(inst.t, 105);
        assert_eq!((inst.a, inst.b), (15, 21));
        assert_eq!(inst.sweep.len(), 1);
        assert_eq!(inst.sweep[0].2, 35);
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
    }

    #[test]
    fn guard_rejects_next_binary_instance() {
        // One extra prime pushes t to 105·11 = 1155, past the guard.
        match build_unomas(2, 2, 0) {
            Err(Error::GuardExceeded { actual, .. }) => assert_eq!(actual, 1155),
            other => panic!("expected a guard error, got {other:?}"),
        }
    }

    #[test]
    fn prime_selection_skips_the_characteristic() {
        let (primes, r, s, extras, t) = select_primes(3, 2).unwrap();
        assert_eq!(primes, vec![2, 5]);
        assert_eq!((r, s), (7, 11));
        assert!(extras.is_empty());
        assert_eq!(t, 770);

        assert!(select_primes(6, 5).is_err(), "6 is not a prime power");
        assert!(select_primes(3, 1).is_err(), "target below q - 1");
    }

    #[test]
    fn ternary_instance_with_two_primes() {
        let inst = build_unomas(3, 2, 9).unwrap();
        assert_eq!(inst.t, 770);
        assert_eq!((inst.a, inst.b), (70, 110));
        assert!(
            inst.certificate.all_pass(),
            "failed claims: {:?}",
            inst.certificate.failures()
        );
        // Four combinations; each drops one of the primes 2 and 5, twice.
        let mut degs: Vec<u64> = inst.sweep.iter().map(|(_, _, d)| *d).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![154, 154, 385, 385]);
    }
}
