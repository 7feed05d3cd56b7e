//! The copy hypergraph and its degree statistics.
//!
//! For a complete multipartite pattern with part sizes summing to s, the
//! hyperedges are the distinct s-sets spanning a copy inside the host. The
//! maximum ell-degree is the largest number of hyperedges through any fixed
//! ell-set; the container precondition asks that every ell-degree be at most
//! `lambda * p^{ell-1} * e / v`.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::pattern::{enumerate_multipartite_copies, Pattern};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("copy statistics require a complete multipartite pattern, got {0}")]
    NotMultipartite(String),
    #[error("hyperedge budget {budget} exceeded (at least {found} copies)")]
    BudgetExceeded { budget: usize, found: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct HypergraphStats {
    /// vertex count of the ambient hypergraph (= host order)
    pub v: usize,
    /// hyperedge count (distinct copy vertex-sets)
    pub e: usize,
    /// uniformity
    pub s: usize,
    /// delta_ell[ell - 1] = maximum ell-degree, for ell = 1..=s
    pub delta_ell: Vec<u64>,
    pub hyperedges: Option<Vec<Vec<u32>>>,
}

/// Per-level verdicts of `Delta_ell <= lambda p^{ell-1} e / v`.
#[derive(Clone, Debug, Serialize)]
pub struct PreconditionVerdict {
    pub p: f64,
    pub lambda: f64,
    pub level_ok: Vec<bool>,
    pub pass: bool,
}

/// Enumerates all copies of the pattern in `h` and computes exact maximum
/// ell-degrees plus the precondition verdict at `(p, lambda)`.
pub fn hypergraph_stats(
    h: &Graph,
    pattern: &Pattern,
    p: f64,
    lambda: f64,
    max_hyperedges: usize,
    keep_edges: bool,
) -> Result<(HypergraphStats, PreconditionVerdict), HypergraphError> {
    let Pattern::CompleteMultipartite(sizes) = pattern else {
        return Err(HypergraphError::NotMultipartite(pattern.to_string()));
    };
    let s: usize = sizes.iter().sum();
    let copies = enumerate_multipartite_copies(h, &Bitset::full(h.n()), sizes, max_hyperedges)
        .map_err(|found| HypergraphError::BudgetExceeded {
            budget: max_hyperedges,
            found,
        })?;

    let mut delta_ell = vec![0u64; s];
    for ell in 1..=s {
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for copy in &copies {
            let mut subset = Vec::with_capacity(ell);
            for_each_subset(copy, ell, &mut subset, &mut |sub| {
                *counts
                    .entry(sub.iter().map(|&x| x as u32).collect())
                    .or_insert(0) += 1;
            });
        }
        delta_ell[ell - 1] = counts.values().copied().max().unwrap_or(0);
    }

    let v = h.n();
    let e = copies.len();
    let ratio = e as f64 / v as f64;
    let level_ok: Vec<bool> = (1..=s)
        .map(|ell| delta_ell[ell - 1] as f64 <= lambda * p.powi(ell as i32 - 1) * ratio)
        .collect();
    let pass = level_ok.iter().all(|&b| b);

    let stats = HypergraphStats {
        v,
        e,
        s,
        delta_ell,
        hyperedges: keep_edges.then(|| {
            copies
                .iter()
                .map(|c| c.iter().map(|&x| x as u32).collect())
                .collect()
        }),
    };
    Ok((stats, PreconditionVerdict { p, lambda, level_ok, pass }))
}

fn for_each_subset(items: &[usize], size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    let start = cur
        .last()
        .map(|&last| items.iter().position(|&x| x == last).unwrap() + 1)
        .unwrap_or(0);
    for i in start..items.len() {
        cur.push(items[i]);
        for_each_subset(items, size, cur, f);
        cur.pop();
    }
}
