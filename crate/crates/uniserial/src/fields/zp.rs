//! Dense arithmetic mod a prime p, on bare `u64` residues.
//!
//! This is the workhorse layer: prime-field scalars and little-endian
//! coefficient vectors over Z/p. Everything above (extension fields, rational
//! function fields, the public polynomial type) bottoms out here.
//!
//! Conventions, relied on throughout:
//! * residues are canonical, `0 <= a < p`;
//! * `p` is prime and `p < 2^62`, so `a + b` never overflows `u64` and
//!   `a * b` fits in `u128`;
//! * polynomials are `&[u64]` / `Vec<u64>` in little-endian order with no
//!   trailing zeros; the zero polynomial is the empty slice.

use rand::Rng;

/// Largest admissible prime modulus. Keeping two bits of headroom means sums
/// of two residues stay in `u64` and products stay well inside `u128`.
pub const MAX_PRIME: u64 = 1 << 62;

// ---- scalar ops ----

#[inline]
pub fn add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Canonical residue of a signed integer.
#[inline]
pub fn of_i64(p: u64, n: i64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

pub fn pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    acc
}

/// Inverse mod p via the extended Euclidean algorithm. Panics on zero; callers
/// are expected to have checked (the public API surfaces `DivisionByZero`).
pub fn inv(p: u64, a: u64) -> u64 {
    assert!(a != 0, "inverse of zero residue");
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert!(r0 == 1, "modulus not coprime to argument");
    t0.rem_euclid(p as i128) as u64
}

// ---- primality (deterministic Miller-Rabin for u64) ----

fn mr_witness(n: u64, d: u64, r: u32, a: u64) -> bool {
    // returns true if `a` proves n composite
    let a = a % n;
    if a == 0 {
        return false;
    }
    let mut x = pow(n, a, d);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..r {
        x = mul(n, x, x);
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Deterministic Miller-Rabin; the witness set below is exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    ![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .any(|&a| mr_witness(n, d, r, a))
}

/// `n = p^k` with p prime and k >= 1, if it is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some((n, 1));
    }
    // the base must be a prime <= n^(1/2); try exact roots k = 2..
    for k in 2..64u32 {
        let p = (n as f64).powf(1.0 / k as f64).round() as u64;
        for cand in p.saturating_sub(1)..=p + 1 {
            if cand >= 2 && cand.checked_pow(k) == Some(n) && is_prime(cand) {
                return Some((cand, k));
            }
        }
    }
    None
}

// ---- dense polynomials over Z/p ----

pub fn ptrim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn pis_zero(f: &[u64]) -> bool {
    f.is_empty()
}

/// Degree of a nonzero polynomial. Callers guard the zero case.
pub fn pdeg(f: &[u64]) -> usize {
    debug_assert!(!f.is_empty());
    f.len() - 1
}

pub fn padd(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = add(p, a, b);
    }
    ptrim(out)
}

pub fn psub(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let n = f.len().max(g.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = sub(p, a, b);
    }
    ptrim(out)
}

pub fn pneg(p: u64, f: &[u64]) -> Vec<u64> {
    f.iter().map(|&c| neg(p, c)).collect()
}

pub fn pscale(p: u64, c: u64, f: &[u64]) -> Vec<u64> {
    if c == 0 {
        return Vec::new();
    }
    f.iter().map(|&a| mul(p, a, c)).collect()
}

/// Schoolbook product. `u128` accumulation with a single reduction per output
/// coefficient would overflow for large p, so we reduce per term; the compiler
/// does fine with this on the small primes we actually run hot (2, 3, 5).
pub fn pmul(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    let pp = p as u128;
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let aa = a as u128;
        for (j, &b) in g.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let t = out[i + j] as u128 + aa * b as u128 % pp;
            out[i + j] = if t >= pp { (t - pp) as u64 } else { t as u64 };
        }
    }
    ptrim(out)
}

/// Euclidean division; returns (quotient, remainder). Divisor must be nonzero.
pub fn pdivrem(p: u64, f: &[u64], g: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!g.is_empty(), "division by zero polynomial");
    if f.len() < g.len() {
        return (Vec::new(), f.to_vec());
    }
    let dlead = inv(p, *g.last().unwrap());
    let mut rem = f.to_vec();
    let mut quo = vec![0u64; f.len() - g.len() + 1];
    for i in (0..quo.len()).rev() {
        let top = rem[i + g.len() - 1];
        if top == 0 {
            continue;
        }
        let c = mul(p, top, dlead);
        quo[i] = c;
        for (j, &gc) in g.iter().enumerate() {
            if gc != 0 {
                rem[i + j] = sub(p, rem[i + j], mul(p, c, gc));
            }
        }
    }
    (ptrim(quo), ptrim(rem))
}

pub fn prem(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    pdivrem(p, f, g).1
}

/// Monic gcd (zero if both inputs are zero).
pub fn pgcd(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (f.to_vec(), g.to_vec());
    while !b.is_empty() {
        let r = prem(p, &a, &b);
        a = b;
        b = r;
    }
    pmonic(p, &a)
}

pub fn pmonic(p: u64, f: &[u64]) -> Vec<u64> {
    match f.last() {
        None => Vec::new(),
        Some(&1) => f.to_vec(),
        Some(&lead) => pscale(p, inv(p, lead), f),
    }
}

pub fn pderiv(p: u64, f: &[u64]) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push(mul(p, c, (i as u64) % p));
    }
    ptrim(out)
}

pub fn peval(p: u64, f: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = add(p, mul(p, acc, x), c);
    }
    acc
}

pub fn pmulmod(p: u64, f: &[u64], g: &[u64], m: &[u64]) -> Vec<u64> {
    prem(p, &pmul(p, f, g), m)
}

/// `f^e mod m` by square-and-multiply over the exponent bits.
pub fn ppowmod(p: u64, f: &[u64], e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = prem(p, f, m);
    let mut acc = vec![1 % p];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(p, &acc, &base, m);
        }
        base = pmulmod(p, &base, &base, m);
        e >>= 1;
    }
    ptrim(acc)
}

// ---- irreducibility over Z/p ----

/// Distinct prime factors of n, smallest first (trial division; n here is a
/// polynomial degree, so tiny).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic polynomial over Z/p: f of degree n is irreducible
/// iff x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1 for every prime l | n.
///
/// The Frobenius ladder x^(p^j) is walked one step at a time so the gcd
/// checkpoints come for free, and the first j steps double as a cheap screen:
/// any factor of degree <= j is caught by gcd(x^(p^j) - x, f) != 1 long before
/// the expensive top of the ladder.
pub fn pirreducible(p: u64, f: &[u64]) -> bool {
    if f.len() < 2 {
        return false; // constants and zero
    }
    let n = pdeg(f);
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    // small screens: a root in Z/p means a linear factor
    if p <= 64 {
        for x in 0..p {
            if peval(p, f, x) == 0 {
                return false;
            }
        }
    }
    let f = pmonic(p, f);
    let mut checkpoints: Vec<usize> = prime_factors(n as u64)
        .iter()
        .map(|&l| n / l as usize)
        .collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    // early-exit screen depth: catches factors of degree <= screen quickly;
    // for large n most reducible candidates die here instead of paying the
    // full ladder, so a deeper screen is a net win despite the extra gcds
    let screen = 24.min(n / 2);

    let x = vec![0, 1];
    let mut h = x.clone(); // x^(p^j) mod f after j steps
    for j in 1..=n {
        h = ppowmod(p, &h, p, &f);
        let at_checkpoint = checkpoints.binary_search(&j).is_ok();
        if j <= screen || at_checkpoint {
            let g = pgcd(p, &psub(p, &h, &x), &f);
            if !g.is_empty() && pdeg(&g) > 0 {
                return false;
            }
            // a nontrivial gcd at a checkpoint is the only failure mode there;
            // passing all checkpoints plus the top identity proves the claim
        }
        if j == n {
            return h == x;
        }
    }
    unreachable!()
}

/// Uniformly random monic polynomial of degree n with nonzero constant term.
pub fn prandom_monic<R: Rng + ?Sized>(p: u64, n: usize, rng: &mut R) -> Vec<u64> {
    let mut f = vec![0u64; n + 1];
    f[n] = 1;
    for c in f.iter_mut().take(n) {
        *c = rng.gen_range(0..p);
    }
    if f[0] == 0 {
        f[0] = rng.gen_range(1..p.max(2));
    }
    ptrim(f)
}

/// The canonical modulus for GF(p^k): the first monic irreducible of degree k
/// when the lower coefficient vectors are enumerated as base-p counters
/// (constant coefficient fastest). Deterministic, so two parses of "GF(9)"
/// agree on the same field.
pub fn canonical_modulus(p: u64, k: usize) -> Vec<u64> {
    assert!(k >= 1);
    if k == 1 {
        return vec![0, 1]; // x, unused in practice
    }
    let mut counter = vec![0u64; k];
    loop {
        let mut f = counter.clone();
        f.push(1);
        let f = ptrim(f);
        if f.len() == k + 1 && pirreducible(p, &f) {
            return f;
        }
        // increment base-p counter; a degree-k irreducible always exists, so
        // this terminates well before wrapping
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] < p {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible of degree {k} over GF({p})??");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_ops_mod_7() {
        assert_eq!(add(7, 5, 4), 2);
        assert_eq!(sub(7, 2, 5), 4);
        assert_eq!(neg(7, 3), 4);
        assert_eq!(mul(7, 5, 5), 4);
        assert_eq!(pow(7, 3, 6), 1);
        for a in 1..7 {
            assert_eq!(mul(7, a, inv(7, a)), 1);
        }
        assert_eq!(of_i64(7, -1), 6);
        assert_eq!(of_i64(7, -14), 0);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(is_prime(4611686018427387847)); // large prime < 2^62
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(4611686018427387904));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn poly_divrem_roundtrip() {
        let p = 5;
        let f = vec![1, 2, 3, 4, 1];
        let g = vec![2, 0, 1];
        let (q, r) = pdivrem(p, &f, &g);
        let back = padd(p, &pmul(p, &q, &g), &r);
        assert_eq!(back, f);
        assert!(r.len() < g.len());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 2;
        // (x+1)(x^2+x+1) and (x+1)(x^3+x+1) share exactly x+1
        let a = pmul(p, &[1, 1], &[1, 1, 1]);
        let b = pmul(p, &[1, 1], &[1, 1, 0, 1]);
        assert_eq!(pgcd(p, &a, &b), vec![1, 1]);
    }

    #[test]
    fn irreducibility_small_cases() {
        // over GF(2): x^2+x+1, x^3+x+1, x^4+x+1 irreducible; x^2+1 = (x+1)^2 not
        assert!(pirreducible(2, &[1, 1, 1]));
        assert!(pirreducible(2, &[1, 1, 0, 1]));
        assert!(pirreducible(2, &[1, 1, 0, 0, 1]));
        assert!(!pirreducible(2, &[1, 0, 1]));
        assert!(!pirreducible(2, &[1, 0, 0, 0, 0, 0, 1])); // x^6+1
        // over GF(3): x^2+1 is irreducible (-1 is not a square mod 3)
        assert!(pirreducible(3, &[1, 0, 1]));
        assert!(!pirreducible(3, &[2, 0, 1])); // x^2-1
    }

    #[test]
    fn irreducibility_agrees_with_trial_division() {
        // exhaustive cross-check over GF(2) up to degree 8
        fn divides(p: u64, d: &[u64], f: &[u64]) -> bool {
            prem(p, f, d).is_empty()
        }
        for bits in 0u32..512 {
            let mut f: Vec<u64> = (0..9).map(|i| ((bits >> i) & 1) as u64).collect();
            f.push(1); // monic of degree exactly 9
            let f = ptrim(f);
            let n = pdeg(&f);
            let mut has_factor = false;
            // enumerate candidate divisors of degree 1..n/2
            for dbits in 0u32..(1 << (n / 2 + 1)) {
                let mut d: Vec<u64> = (0..=(n / 2)).map(|i| ((dbits >> i) & 1) as u64).collect();
                d = ptrim(d);
                if d.len() < 2 {
                    continue;
                }
                if divides(2, &d, &f) {
                    has_factor = true;
                    break;
                }
            }
            assert_eq!(pirreducible(2, &f), !has_factor, "poly {f:?}");
        }
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]); // x^2+x+1
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]); // x^2+1
        assert_eq!(canonical_modulus(2, 3), vec![1, 1, 0, 1]); // x^3+x+1
        let m = canonical_modulus(2, 105);
        assert_eq!(m.len(), 106);
        assert!(pirreducible(2, &m));
    }

    #[test]
    fn random_monic_hits_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = false;
        for _ in 0..200 {
            let f = prandom_monic(5, 6, &mut rng);
            if pirreducible(5, &f) {
                found = true;
                break;
            }
        }
        assert!(found, "no irreducible sextic over GF(5) in 200 draws");
    }

    #[test]
    fn powmod_fermat() {
        // x^(p^n) = x mod f for irreducible f of degree n
        let f = vec![1, 1, 0, 0, 1]; // x^4+x+1 over GF(2)
        let mut h = vec![0, 1];
        for _ in 0..4 {
            h = ppowmod(2, &h, 2, &f);
        }
        assert_eq!(h, vec![0, 1]);
    }
}
