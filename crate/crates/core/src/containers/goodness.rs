//! Partition-balance ("goodness") checking over secant subsets, and the
//! derived sparsification parameters.
//!
//! Logarithms here are base 2, unlike the rest of the crate; every formula
//! below that mentions a log documents that at the call site.

use crate::bitset::Bitset;
use crate::constructions::PartitionAssignment;
use crate::exec::{self, Exec};
use crate::unital::BipartiteIncidence;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GoodnessVerdict {
    Pass,
    Fail,
    /// |U| < 500 r^2 q^2: the guarantee is vacuous below the threshold
    BelowThreshold,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodnessReport {
    pub q: u32,
    pub r: usize,
    pub u_size: usize,
    pub threshold: u64,
    /// best balance scale found (>= |U| / q^2), 0.0 when vacuous
    pub gamma_best: f64,
    /// points y with gamma/(10 r) <= |S_i(y) cap U| <= gamma for all i
    pub qualifying_count: u64,
    /// required count |U| q / (8 log2(q) gamma) at gamma_best
    pub required: f64,
    pub candidates_tried: usize,
    pub verdict: GoodnessVerdict,
}

/// Searches the finite candidate set for a balance scale gamma: the floor
/// value |U|/q^2 plus every distinct achieved max_i |S_i(y) cap U|. Any
/// gamma between two candidates is dominated by one of them, so the scan is
/// exhaustive over the scales that matter. Base-2 logarithm per the source
/// convention for this machinery.
pub fn goodness_check(
    f: &BipartiteIncidence,
    parts: &PartitionAssignment,
    u_set: &Bitset,
    r: usize,
) -> GoodnessReport {
    goodness_check_exec(f, parts, u_set, r, Exec::Auto)
}

pub fn goodness_check_exec(
    f: &BipartiteIncidence,
    parts: &PartitionAssignment,
    u_set: &Bitset,
    r: usize,
    exec: Exec,
) -> GoodnessReport {
    let q = f.q();
    let u_size = u_set.count();
    let threshold = 500 * (r as u64) * (r as u64) * (q as u64) * (q as u64);
    if u_size == 0 {
        return GoodnessReport {
            q,
            r,
            u_size,
            threshold,
            gamma_best: 0.0,
            qualifying_count: 0,
            required: 0.0,
            candidates_tried: 0,
            verdict: GoodnessVerdict::BelowThreshold,
        };
    }

    // per-point extreme intersection sizes: min_i and max_i of |S_i(y) cap U|
    let extremes: Vec<(u32, u32)> = exec::map_collect(exec, f.y_count(), |y| {
        let mut counts = vec![0u32; r];
        let nbrs = f.neighbors_of_y(y);
        for (i, &x) in nbrs.iter().enumerate() {
            if u_set.contains(x as usize) {
                counts[(parts.part(y, i) - 1) as usize] += 1;
            }
        }
        let mn = *counts.iter().min().unwrap();
        let mx = *counts.iter().max().unwrap();
        (mn, mx)
    });

    let gamma_floor = u_size as f64 / (q as f64 * q as f64);
    let mut candidates: Vec<f64> = extremes
        .iter()
        .map(|&(_, mx)| mx as f64)
        .filter(|&g| g >= gamma_floor && g > 0.0)
        .collect();
    candidates.push(gamma_floor);
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();

    let log2q = (q as f64).log2();
    let evals: Vec<(f64, u64, f64)> = exec::map_collect(exec, candidates.len(), |ci| {
        let gamma = candidates[ci];
        let lo = gamma / (10.0 * r as f64);
        let count = extremes
            .iter()
            .filter(|&&(mn, mx)| mn as f64 >= lo && (mx as f64) <= gamma)
            .count() as u64;
        let required = u_size as f64 * q as f64 / (8.0 * log2q * gamma);
        (gamma, count, required)
    });

    // best = maximum margin count - required; ties to the smaller gamma
    let mut best = (0.0f64, 0u64, f64::INFINITY);
    let mut best_margin = f64::NEG_INFINITY;
    for &(gamma, count, required) in &evals {
        let margin = count as f64 - required;
        if margin > best_margin {
            best_margin = margin;
            best = (gamma, count, required);
        }
    }
    // below the size gate the guarantee is vacuous, but gamma and the count
    // are still reported
    let verdict = if (u_size as u64) < threshold {
        GoodnessVerdict::BelowThreshold
    } else if best.1 as f64 >= best.2 {
        GoodnessVerdict::Pass
    } else {
        GoodnessVerdict::Fail
    };
    GoodnessReport {
        q,
        r,
        u_size,
        threshold,
        gamma_best: best.0,
        qualifying_count: best.1,
        required: best.2,
        candidates_tried: candidates.len(),
        verdict,
    }
}

// ----------------------------------------------------------------------------
// Sparsification parameters
// ----------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JsError {
    #[error("need s >= 2, got {0}")]
    STooSmall(usize),
    #[error("need q >= 2, got {0}")]
    QTooSmall(u64),
}

/// Target set size `a`, keep probability, and the log-domain bound on the
/// number of pattern-free a-sets. Base-2 logs.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct JsParameters {
    pub q: u64,
    pub s: usize,
    /// a = ceil(q^{2 - 1/(s-1)} (log2 q)^3); the raw formula is not an
    /// integer, and set sizes must be, so the ceiling is applied
    pub a: u64,
    /// q^{-1/(s-1)}
    pub keep_p: f64,
    /// log2 of the count bound (q^{1/(s-1)})^a = a/(s-1) * log2 q
    pub log2_count_bound: f64,
}

pub fn js_parameters(q: u64, s: usize) -> Result<JsParameters, JsError> {
    if s < 2 {
        return Err(JsError::STooSmall(s));
    }
    if q < 2 {
        return Err(JsError::QTooSmall(q));
    }
    let qf = q as f64;
    let inv = 1.0 / (s as f64 - 1.0);
    let a_raw = qf.powf(2.0 - inv) * qf.log2().powi(3);
    Ok(JsParameters {
        q,
        s,
        a: a_raw.ceil() as u64,
        keep_p: qf.powf(-inv),
        log2_count_bound: a_raw.ceil() * inv * qf.log2(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::mv_partite_graph;
    use crate::unital::hermitian_unital;

    #[test]
    fn js_small_values() {
        let j = js_parameters(2, 2).unwrap();
        assert_eq!(j.a, 2);
        assert!((j.keep_p - 0.5).abs() < 1e-12);
        assert!((j.log2_count_bound - 2.0).abs() < 1e-12);
        // q = 4 is accepted arithmetically; primality is a pipeline concern
        let j4 = js_parameters(4, 2).unwrap();
        assert!((j4.keep_p - 0.25).abs() < 1e-12);
        // a = ceil(3 * (log2 3)^3) = 12 at q = 3, s = 2
        assert_eq!(js_parameters(3, 2).unwrap().a, 12);
    }

    #[test]
    fn js_rejects_degenerate() {
        assert_eq!(js_parameters(5, 1).unwrap_err(), JsError::STooSmall(1));
        assert_eq!(js_parameters(1, 3).unwrap_err(), JsError::QTooSmall(1));
    }

    #[test]
    fn small_u_is_vacuous() {
        let f = hermitian_unital(2).unwrap();
        let (_, parts) = mv_partite_graph(&f, 2, 1).unwrap();
        // |U| = 12 < 500 * 4 * 4 = 8000
        let u = Bitset::full(f.x_count());
        let rep = goodness_check(&f, &parts, &u, 2);
        assert_eq!(rep.verdict, GoodnessVerdict::BelowThreshold);
        assert_eq!(rep.threshold, 8000);
        // empty U is vacuous too
        let rep2 = goodness_check(&f, &parts, &Bitset::new(f.x_count()), 2);
        assert_eq!(rep2.verdict, GoodnessVerdict::BelowThreshold);
    }

    #[test]
    fn report_count_matches_naive_recount_at_reported_gamma() {
        let f = hermitian_unital(3).unwrap();
        let r = 2usize;
        let (_, parts) = mv_partite_graph(&f, r, 9).unwrap();
        let mut u = Bitset::new(f.x_count());
        for x in (0..f.x_count()).step_by(2) {
            u.insert(x);
        }
        let rep = goodness_check(&f, &parts, &u, r);
        // q^2 - q >= 2000 is needed before the gate can pass, so every desk
        // size is vacuous, but gamma and the count are still reported
        assert_eq!(rep.verdict, GoodnessVerdict::BelowThreshold);
        assert!(rep.gamma_best >= u.count() as f64 / 9.0);
        let lo = rep.gamma_best / (10.0 * r as f64);
        let mut expected = 0u64;
        for y in 0..f.y_count() {
            let mut counts = vec![0u32; r];
            for (i, &x) in f.neighbors_of_y(y).iter().enumerate() {
                if u.contains(x as usize) {
                    counts[(parts.part(y, i) - 1) as usize] += 1;
                }
            }
            let mn = *counts.iter().min().unwrap() as f64;
            let mx = *counts.iter().max().unwrap() as f64;
            if mn >= lo && mx <= rep.gamma_best {
                expected += 1;
            }
        }
        assert_eq!(rep.qualifying_count, expected);
        let want_required =
            u.count() as f64 * 3.0 / (8.0 * 3.0f64.log2() * rep.gamma_best);
        assert!((rep.required - want_required).abs() < 1e-9);
    }
}
