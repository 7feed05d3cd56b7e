//! Log-domain fingerprint-count bounds.
//!
//! The number of `P`-independent s-sets in a locally dense host is bounded by
//! counting fingerprints times containers-worth of completions:
//!
//! - tight form: `(t+1)^2 * n^{2t} * C(floor(gamma n^theta), s)`,
//! - relaxed form: `n^{4t} * (e gamma n^theta / s)^s`,
//!
//! where t caps both fingerprint sides. Both are computed as natural logs;
//! the tight form never exceeds the relaxed one.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CountBoundError {
    #[error("need n >= 2, got {0}")]
    HostTooSmall(usize),
    #[error("need s >= 1, got {0}")]
    SetTooSmall(usize),
    #[error("gamma must be positive, got {0}")]
    BadGamma(f64),
    #[error("binomial form needs s <= gamma * n^theta ({s} > {cap})")]
    SetAboveCap { s: usize, cap: f64 },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CountBound {
    pub log_binomial_form: f64,
    pub log_relaxed_form: f64,
    pub t: u64,
    pub container_cap: u64,
}

/// Both count bounds, in natural-log domain. `t` is the fingerprint-size cap.
/// The container threshold r does not enter either formula; only the
/// container size cap `gamma n^theta` does.
pub fn fingerprint_count_bound(
    n: usize,
    t: u64,
    s: usize,
    gamma: f64,
    theta: f64,
) -> Result<CountBound, CountBoundError> {
    if n < 2 {
        return Err(CountBoundError::HostTooSmall(n));
    }
    if s < 1 {
        return Err(CountBoundError::SetTooSmall(s));
    }
    if !(gamma > 0.0) {
        return Err(CountBoundError::BadGamma(gamma));
    }
    let nf = n as f64;
    let cap_real = gamma * nf.powf(theta);
    if (s as f64) > cap_real {
        return Err(CountBoundError::SetAboveCap { s, cap: cap_real });
    }
    let m = cap_real.floor() as u64;
    let ln_n = nf.ln();
    let log_binomial_form =
        2.0 * ((t + 1) as f64).ln() + 2.0 * t as f64 * ln_n + ln_binomial(m, s as u64);
    // ln(e gamma n^theta / s) = 1 + ln gamma + theta ln n - ln s
    let log_relaxed_form =
        4.0 * t as f64 * ln_n + s as f64 * (1.0 + gamma.ln() + theta * ln_n - (s as f64).ln());
    Ok(CountBound {
        log_binomial_form,
        log_relaxed_form,
        t,
        container_cap: m,
    })
}

/// ln C(m, s) by the telescoping product sum(ln((m-s+i)/i)); exact zero when
/// s = 0 or s = m, -inf when s > m.
pub fn ln_binomial(m: u64, s: u64) -> f64 {
    if s > m {
        return f64::NEG_INFINITY;
    }
    let s = s.min(m - s);
    let mut acc = 0.0f64;
    for i in 1..=s {
        acc += ((m - s + i) as f64).ln() - (i as f64).ln();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_zero_relaxed_form() {
        // t = 0: relaxed form collapses to s ln(e gamma n^theta / s)
        let b = fingerprint_count_bound(100, 0, 5, 1.0, 0.5).unwrap();
        let expect = 5.0 * (std::f64::consts::E * 10.0 / 5.0).ln();
        assert!((b.log_relaxed_form - expect).abs() < 1e-9);
        assert!(b.log_binomial_form <= b.log_relaxed_form);
    }

    #[test]
    fn binomial_form_below_relaxed_on_grid() {
        for &n in &[100usize, 10_000, 1_000_000] {
            for &t in &[0u64, 1, 10, 100] {
                for &s in &[1usize, 10, 100] {
                    for &theta in &[0.5, 2.0 / 3.0, 1.0] {
                        let gamma = 1.0;
                        let cap = gamma * (n as f64).powf(theta);
                        if (s as f64) > cap {
                            continue;
                        }
                        let b = fingerprint_count_bound(n, t, s, gamma, theta).unwrap();
                        assert!(
                            b.log_binomial_form <= b.log_relaxed_form + 1e-9,
                            "n={n} t={t} s={s} theta={theta}: {} > {}",
                            b.log_binomial_form,
                            b.log_relaxed_form
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn s_equal_cap_gives_zero_binomial_term() {
        // gamma n^theta = s exactly: C(s, s) = 1 contributes ln 1 = 0
        let b = fingerprint_count_bound(100, 3, 10, 1.0, 0.5).unwrap();
        let without = 2.0 * 4.0f64.ln() + 6.0 * (100.0f64).ln();
        assert!((b.log_binomial_form - without).abs() < 1e-9);
        assert_eq!(b.container_cap, 10);
    }

    #[test]
    fn rejects_domain_violations() {
        assert!(fingerprint_count_bound(1, 0, 1, 1.0, 0.5).is_err());
        assert!(fingerprint_count_bound(100, 0, 0, 1.0, 0.5).is_err());
        assert!(fingerprint_count_bound(100, 0, 1, 0.0, 0.5).is_err());
        assert!(matches!(
            fingerprint_count_bound(100, 0, 11, 1.0, 0.5),
            Err(CountBoundError::SetAboveCap { .. })
        ));
    }

    #[test]
    fn ln_binomial_small_values() {
        assert_eq!(ln_binomial(5, 0), 0.0);
        assert_eq!(ln_binomial(5, 5), 0.0);
        assert!((ln_binomial(5, 2) - 10.0f64.ln()).abs() < 1e-12);
        assert!((ln_binomial(10, 3) - 120.0f64.ln()).abs() < 1e-12);
        assert_eq!(ln_binomial(3, 4), f64::NEG_INFINITY);
    }
}
