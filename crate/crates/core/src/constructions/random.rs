//! Erdos-Renyi random graphs.

use crate::graph::Graph;
use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RandomGraphError {
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// G(n, p): every pair independently with probability p, pairs drawn in
/// lexicographic order from one splitmix64 stream. Bit-identical per seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, RandomGraphError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(RandomGraphError::BadProbability(p));
    }
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.bernoulli(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g.with_label(format!("gnp(n={n}, p={p}, seed={seed})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(gnp(20, 0.0, 9).unwrap().edge_count(), 0);
        assert_eq!(gnp(20, 1.0, 9).unwrap().edge_count(), 190);
        assert!(gnp(5, 1.5, 0).is_err());
        assert!(gnp(5, -0.1, 0).is_err());
    }

    #[test]
    fn edge_count_within_four_sigma_and_replays() {
        // n = 100, p = 1/2: mean 2475, sigma = sqrt(4950 * 0.25) ~ 35.2
        let g1 = gnp(100, 0.5, 42).unwrap();
        let g2 = gnp(100, 0.5, 42).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        let e = g1.edge_count() as f64;
        assert!((e - 2475.0).abs() <= 4.0 * 35.18, "e = {e}");
    }
}
