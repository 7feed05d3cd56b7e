//! Parameter calculators for the cited host-graph families, plus the
//! Bertrand-interval prime finder.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("ell must be >= 1, got {0}")]
    EllTooSmall(u32),
    #[error("ell = {0} is divisible by 3")]
    EllDivisibleByThree(u32),
    #[error("ell = {0} exceeds the exact-integer guard (<= 40)")]
    EllTooLarge(u32),
    #[error("q = {0} is not a prime power >= 2")]
    NotPrimePower(u64),
}

/// Parameters of the triangle-free pseudorandom host family indexed by ell:
/// m = 2^{3 ell} vertices, degree d = 2^{ell-1} (2^{ell-1} - 1), nontrivial
/// eigenvalues inside [nu_lo, nu_hi], and the mixing-lemma density
/// consequence: every vertex set of size >= `density_threshold` spans at
/// least |X|^2 / `density_denominator` edges.
#[derive(Clone, Debug, Serialize)]
pub struct AlonParameters {
    pub ell: u32,
    pub m: u128,
    pub d: u128,
    pub nu_lo: f64,
    pub nu_hi: f64,
    pub density_threshold: u128,
    pub density_denominator: u128,
}

pub fn alon_parameters(ell: u32) -> Result<AlonParameters, ParamError> {
    if ell < 1 {
        return Err(ParamError::EllTooSmall(ell));
    }
    if ell % 3 == 0 {
        return Err(ParamError::EllDivisibleByThree(ell));
    }
    if ell > 40 {
        return Err(ParamError::EllTooLarge(ell));
    }
    let half = 1u128 << (ell - 1);
    let two_ell = (1u128 << ell) as f64;
    let sqrt_two_ell = two_ell.sqrt(); // 2^{ell/2}
    let tenb = 10_000_000_000u128; // 10^10
    Ok(AlonParameters {
        ell,
        m: 1u128 << (3 * ell),
        d: half * (half - 1),
        nu_lo: -9.0 * two_ell - 3.0 * sqrt_two_ell - 0.25,
        nu_hi: 4.0 * two_ell + 2.0 * sqrt_two_ell + 0.25,
        density_threshold: tenb << (2 * ell),
        density_denominator: tenb << ell,
    })
}

/// Parameters of the K4-free locally dense host family: m = q^2 (q^2 - q + 1)
/// vertices; every vertex set of size >= 2^24 q^2 spans at least
/// |X|^2 / (256 q) edges.
#[derive(Clone, Debug, Serialize)]
pub struct MVParameters {
    pub q: u64,
    pub m: u128,
    pub threshold: u128,
    /// density coefficient as the exact rational 1 / (256 q)
    pub density_coefficient: (u64, u64),
}

pub fn mv_parameters(q: u64) -> Result<MVParameters, ParamError> {
    if !is_prime_power(q) {
        return Err(ParamError::NotPrimePower(q));
    }
    let q2 = (q as u128) * (q as u128);
    Ok(MVParameters {
        q,
        m: q2 * (q2 - q as u128 + 1),
        threshold: (1u128 << 24) * q2,
        density_coefficient: (1, 256 * q),
    })
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut n = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            return n == 1 && p >= 2;
        }
        d += 1;
    }
    true // q itself is prime
}

/// Smallest prime strictly greater than `a`; always at most `2a` by
/// Bertrand's postulate (asserted).
pub fn next_prime(a: u64) -> u64 {
    let mut c = a + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    debug_assert!(a < 1 || c <= 2 * a, "Bertrand interval violated");
    c
}

/// Deterministic Miller-Rabin for u64 (the 12 smallest prime bases decide
/// primality for all 64-bit integers).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}
