//! Sparsify-and-delete: sample a vertex subset, enumerate every
//! pattern-free s-subset inside it, delete one vertex per bad set, and
//! verify the resulting independence guarantee.

use crate::alpha::{enumerate_free_sets, find_pattern_free_set, greedy_over, SearchError};
use crate::bitset::Bitset;
use crate::graph::{Graph, VertexSet};
use crate::pattern::{contains_pattern_within, Pattern};
use crate::rng::SplitMix64;
use serde::Serialize;
use std::time::Instant;

/// Verdict of the alpha-upper verification step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AlphaVerdict {
    /// exact search proved no pattern-free set of the target size exists
    VerifiedExact,
    /// sampled falsification found nothing in the stated number of samples
    FalsificationPassed { samples: u64 },
    /// a pattern-free set of the target size (sorted members)
    Counterexample { witness: Vec<usize> },
    /// the exact search ran out of budget
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug)]
pub enum AlphaVerifyMode {
    Exact { node_budget: u64 },
    Falsify { samples: u64, seed: u64 },
}

/// Does `alpha_F(G) < s` hold? Exact mode proves or refutes it; falsify mode
/// samples random s-sets and greedy-grown candidates.
pub fn verify_alpha_upper(g: &Graph, p: &Pattern, s: usize, mode: AlphaVerifyMode) -> AlphaVerdict {
    if s > g.n() {
        return AlphaVerdict::VerifiedExact; // no s-set exists at all
    }
    match mode {
        AlphaVerifyMode::Exact { node_budget } => {
            match find_pattern_free_set(g, &Bitset::full(g.n()), p, s, node_budget) {
                Ok(None) => AlphaVerdict::VerifiedExact,
                Ok(Some(w)) => AlphaVerdict::Counterexample {
                    witness: w.to_sorted_vec(),
                },
                Err(SearchError::BudgetExceeded { .. }) => AlphaVerdict::BudgetExceeded,
            }
        }
        AlphaVerifyMode::Falsify { samples, seed } => {
            for i in 0..samples {
                let mut rng = SplitMix64::stream(seed, i);
                // random s-subset
                let cand = rng.subset(g.n(), s);
                let bits = Bitset::from_indices(g.n(), cand.iter().copied());
                if contains_pattern_within(g, &bits, p).is_none() {
                    return AlphaVerdict::Counterexample { witness: cand };
                }
                // greedy candidate grown along a random permutation
                let mut perm: Vec<usize> = (0..g.n()).collect();
                rng.shuffle(&mut perm);
                let grown = greedy_over(g, p, &perm);
                if grown.len() >= s {
                    let mut w = grown.to_sorted_vec();
                    w.truncate(s);
                    return AlphaVerdict::Counterexample { witness: w };
                }
            }
            AlphaVerdict::FalsificationPassed { samples }
        }
    }
}

/// Report of one sparsify-and-delete run. CSV columns:
/// `seed,n,s,p,b_size,bad_sets,deletions,out_size,verdict,micros`.
#[derive(Clone, Debug, Serialize)]
pub struct SparsifyReport {
    pub input: String,
    pub seed: u64,
    pub n: usize,
    pub s: usize,
    pub p: f64,
    pub b_size: usize,
    pub bad_sets: u64,
    /// enumeration stopped early on the node budget
    pub enumeration_complete: bool,
    pub deletions: u64,
    pub out_size: usize,
    pub verdict: AlphaVerdict,
    pub micros: u64,
}

impl SparsifyReport {
    pub fn csv_header() -> &'static str {
        "seed,n,s,p,b_size,bad_sets,deletions,out_size,verdict,micros"
    }

    pub fn csv_row(&self) -> String {
        let verdict = match &self.verdict {
            AlphaVerdict::VerifiedExact => "verified-exact".to_string(),
            AlphaVerdict::FalsificationPassed { samples } => {
                format!("falsification-passed({samples})")
            }
            AlphaVerdict::Counterexample { .. } => "counterexample".to_string(),
            AlphaVerdict::BudgetExceeded => "budget-exceeded".to_string(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.n,
            self.s,
            self.p,
            self.b_size,
            self.bad_sets,
            self.deletions,
            self.out_size,
            verdict,
            self.micros
        )
    }
}

/// Samples B vertexwise with probability `p`, enumerates all pattern-free
/// s-subsets of B (budget-guarded DFS), deletes the lowest-index vertex of
/// every bad set in lexicographic order with re-checking, and returns the
/// graph induced on the survivors plus the report.
pub fn sparsify_delete(
    g: &Graph,
    pattern: &Pattern,
    s: usize,
    p: f64,
    seed: u64,
    enumeration_budget: u64,
) -> (Graph, SparsifyReport) {
    let start = Instant::now();
    let n = g.n();
    let mut rng = SplitMix64::new(seed);
    let mut b = Bitset::new(n);
    for v in 0..n {
        if rng.bernoulli(p) {
            b.insert(v);
        }
    }
    let b_size = b.count();

    // bad sets arrive in lexicographic order from the ascending DFS
    let mut bad: Vec<Vec<usize>> = Vec::new();
    let mut budget = enumeration_budget;
    let enum_res = enumerate_free_sets(g, &b, pattern, s, &mut budget, &mut |set| {
        bad.push(set.clone());
        true
    });
    let enumeration_complete = enum_res.is_ok();

    let mut survivors = b.clone();
    let mut deletions = 0u64;
    for set in &bad {
        if set.iter().all(|&v| survivors.contains(v)) {
            survivors.remove(set[0]); // lowest index: DFS emits sorted sets
            deletions += 1;
        }
    }

    let keep = VertexSet::from_bitset(survivors);
    let out = g
        .induced_subgraph(&keep)
        .expect("survivors are in range")
        .with_label(format!("sparsify(seed={seed})"));

    let verdict = if !enumeration_complete {
        AlphaVerdict::BudgetExceeded
    } else if out.n() <= 40 {
        verify_alpha_upper(&out, pattern, s, AlphaVerifyMode::Exact { node_budget: 1 << 32 })
    } else {
        verify_alpha_upper(
            &out,
            pattern,
            s,
            AlphaVerifyMode::Falsify { samples: 200, seed: seed ^ 0xF415 },
        )
    };

    let report = SparsifyReport {
        input: g.label().unwrap_or("graph").to_string(),
        seed,
        n,
        s,
        p,
        b_size,
        bad_sets: bad.len() as u64,
        enumeration_complete,
        deletions,
        out_size: out.n(),
        verdict,
        micros: start.elapsed().as_micros() as u64,
    };
    (out, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::named_graph;

    #[test]
    fn complete_host_with_edge_pattern_deletes_nothing() {
        // independent sets in K_n have size 1 < s, so no bad sets exist
        let g = Graph::complete(20);
        let (out, rep) = sparsify_delete(&g, &Pattern::clique(2).unwrap(), 3, 0.9, 1, 1 << 30);
        assert_eq!(rep.bad_sets, 0);
        assert_eq!(rep.deletions, 0);
        assert_eq!(out.n(), rep.b_size);
        assert_eq!(rep.verdict, AlphaVerdict::VerifiedExact);
    }

    #[test]
    fn empty_host_collapses_to_below_s() {
        // every 3-subset of B is bad; deletions must destroy them all
        let g = Graph::empty(30);
        let (out, rep) = sparsify_delete(&g, &Pattern::clique(2).unwrap(), 3, 1.0, 5, 1 << 30);
        assert!(out.n() <= 2, "got {}", out.n());
        assert_eq!(rep.verdict, AlphaVerdict::VerifiedExact);
        assert_eq!(rep.b_size, 30);
        // output size >= |B| - deletions
        assert!(out.n() >= rep.b_size - rep.deletions as usize);
    }

    #[test]
    fn hoffman_singleton_above_independence_number_sees_no_bad_sets() {
        // alpha(HS) = 15 (computed by the dedicated solver in the acceptance
        // suite); s = 16 finds nothing
        let g = named_graph("hoffman_singleton").unwrap();
        let (out, rep) = sparsify_delete(&g, &Pattern::clique(2).unwrap(), 16, 1.0, 3, 1 << 34);
        assert!(rep.enumeration_complete);
        assert_eq!(rep.bad_sets, 0);
        assert_eq!(out.n(), 50);
    }

    #[test]
    fn enumeration_completeness_against_naive_scan_small_b() {
        for seed in [2u64, 13] {
            let g = crate::constructions::gnp(18, 0.35, seed).unwrap();
            let p = Pattern::clique(3).unwrap();
            let s = 4usize;
            // naive: all s-subsets of V (B = V at p = 1)
            let mut naive = 0u64;
            let idx: Vec<usize> = (0..18).collect();
            let mut comb = vec![0usize; s];
            fn rec(
                idx: &[usize],
                s: usize,
                start: usize,
                cur: &mut Vec<usize>,
                g: &Graph,
                p: &Pattern,
                acc: &mut u64,
            ) {
                if cur.len() == s {
                    let bits = Bitset::from_indices(g.n(), cur.iter().copied());
                    if contains_pattern_within(g, &bits, p).is_none() {
                        *acc += 1;
                    }
                    return;
                }
                for i in start..idx.len() {
                    cur.push(idx[i]);
                    rec(idx, s, i + 1, cur, g, p, acc);
                    cur.pop();
                }
            }
            comb.clear();
            rec(&idx, s, 0, &mut comb, &g, &p, &mut naive);
            let (_, rep) = sparsify_delete(&g, &p, s, 1.0, 0, 1 << 32);
            assert_eq!(rep.bad_sets, naive, "seed {seed}");
        }
    }

    #[test]
    fn verify_alpha_upper_examples() {
        // every 3 vertices of K5 span a triangle
        let k5 = Graph::complete(5);
        assert_eq!(
            verify_alpha_upper(
                &k5,
                &Pattern::clique(3).unwrap(),
                3,
                AlphaVerifyMode::Exact { node_budget: 1 << 20 }
            ),
            AlphaVerdict::VerifiedExact
        );
        // petersen is triangle-free: any 3-set is a counterexample
        let pet = named_graph("petersen").unwrap();
        let v = verify_alpha_upper(
            &pet,
            &Pattern::clique(3).unwrap(),
            3,
            AlphaVerifyMode::Exact { node_budget: 1 << 20 },
        );
        match v {
            AlphaVerdict::Counterexample { witness } => assert_eq!(witness.len(), 3),
            other => panic!("expected counterexample, got {other:?}"),
        }
        // falsify mode also finds it
        let v2 = verify_alpha_upper(
            &pet,
            &Pattern::clique(3).unwrap(),
            3,
            AlphaVerifyMode::Falsify { samples: 50, seed: 1 },
        );
        assert!(matches!(v2, AlphaVerdict::Counterexample { .. }));
    }

    #[test]
    fn budget_flagged_in_report() {
        let g = crate::constructions::gnp(40, 0.1, 9).unwrap();
        let (_, rep) = sparsify_delete(&g, &Pattern::clique(3).unwrap(), 5, 1.0, 9, 10);
        assert!(!rep.enumeration_complete);
        assert_eq!(rep.verdict, AlphaVerdict::BudgetExceeded);
    }

    #[test]
    fn csv_row_shape() {
        let g = Graph::complete(8);
        let (_, rep) = sparsify_delete(&g, &Pattern::clique(2).unwrap(), 2, 1.0, 0, 1 << 20);
        let row = rep.csv_row();
        assert_eq!(row.split(',').count(), SparsifyReport::csv_header().split(',').count());
    }
}
