//! The randomized r-partite overlay graph on the secant side of a unital.
//!
//! For every point y, its secant neighborhood N(y) is partitioned into r
//! parts by i.i.d. uniform draws, and all cross pairs become edges: each y
//! contributes a complete r-partite graph on N(y). Because the incidence
//! structure is C4-free, a pair of secants lies in at most one common
//! neighborhood, so every overlay edge has a unique witnessing point.

use crate::graph::Graph;
use crate::rng::SplitMix64;
use crate::unital::BipartiteIncidence;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OverlayError {
    #[error("need at least 2 parts, got r = {0}")]
    TooFewParts(usize),
    #[error("part count r = {0} exceeds the u16 representation guard")]
    TooManyParts(usize),
}

/// Per-point part assignment: `parts[y][i]` is the 1-based part of the i-th
/// neighbor (in ascending secant order) of point y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionAssignment {
    pub r: usize,
    pub seed: u64,
    parts: Vec<Vec<u16>>,
}

impl PartitionAssignment {
    /// Part of the i-th neighbor of y.
    #[inline]
    pub fn part(&self, y: usize, neighbor_pos: usize) -> u16 {
        self.parts[y][neighbor_pos]
    }

    pub fn row(&self, y: usize) -> &[u16] {
        &self.parts[y]
    }

    pub fn y_count(&self) -> usize {
        self.parts.len()
    }
}

/// Builds the overlay graph H on vertex set X. Deterministic per seed: draws
/// are taken with one splitmix64 stream, points in ascending index order,
/// neighbors in ascending order within each point.
pub fn mv_partite_graph(
    f: &BipartiteIncidence,
    r: usize,
    seed: u64,
) -> Result<(Graph, PartitionAssignment), OverlayError> {
    if r < 2 {
        return Err(OverlayError::TooFewParts(r));
    }
    if r > u16::MAX as usize {
        return Err(OverlayError::TooManyParts(r));
    }
    let mut rng = SplitMix64::new(seed);
    let mut parts: Vec<Vec<u16>> = Vec::with_capacity(f.y_count());
    for y in 0..f.y_count() {
        let deg = f.neighbors_of_y(y).len();
        let mut row = Vec::with_capacity(deg);
        for _ in 0..deg {
            row.push(1 + rng.uniform(r as u64) as u16);
        }
        parts.push(row);
    }

    let mut h = Graph::empty(f.x_count());
    for y in 0..f.y_count() {
        let nbrs = f.neighbors_of_y(y);
        let row = &parts[y];
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                if row[i] != row[j] {
                    h.add_edge(nbrs[i] as usize, nbrs[j] as usize);
                }
            }
        }
    }
    let h = h.with_label(format!("mv-overlay(q={}, r={r}, seed={seed})", f.q()));
    Ok((h, PartitionAssignment { r, seed, parts }))
}

/// Serializes the assignment as "y x part" lines, sorted by (y, x).
pub fn emit_partition(f: &BipartiteIncidence, pa: &PartitionAssignment) -> String {
    let mut out = String::new();
    for y in 0..f.y_count() {
        let nbrs = f.neighbors_of_y(y);
        for (i, &x) in nbrs.iter().enumerate() {
            out.push_str(&format!("{y} {x} {}\n", pa.part(y, i)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{contains_pattern, Pattern};
    use crate::unital::hermitian_unital;

    #[test]
    fn rejects_r_below_two() {
        let f = hermitian_unital(2).unwrap();
        assert_eq!(
            mv_partite_graph(&f, 1, 0).unwrap_err(),
            OverlayError::TooFewParts(1)
        );
    }

    #[test]
    fn q2_overlay_is_k4_free_on_every_tested_seed() {
        let f = hermitian_unital(2).unwrap();
        for seed in 0..20 {
            let (h, _) = mv_partite_graph(&f, 2, seed).unwrap();
            assert_eq!(h.n(), 12);
            assert!(contains_pattern(&h, &Pattern::clique(4).unwrap()).is_none());
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let f = hermitian_unital(3).unwrap();
        let (h1, p1) = mv_partite_graph(&f, 3, 7).unwrap();
        let (h2, p2) = mv_partite_graph(&f, 3, 7).unwrap();
        assert_eq!(h1.edges(), h2.edges());
        assert_eq!(p1, p2);
        let (h3, _) = mv_partite_graph(&f, 3, 8).unwrap();
        assert_ne!(h1.edges(), h3.edges());
    }

    #[test]
    fn every_edge_has_witness_and_witnessed_pairs_are_complete() {
        let f = hermitian_unital(3).unwrap();
        let (h, pa) = mv_partite_graph(&f, 2, 5).unwrap();
        // direction 1: every cross pair inside some N(y) is an edge
        for y in 0..f.y_count() {
            let nbrs = f.neighbors_of_y(y);
            for i in 0..nbrs.len() {
                for j in (i + 1)..nbrs.len() {
                    if pa.part(y, i) != pa.part(y, j) {
                        assert!(h.has_edge(nbrs[i] as usize, nbrs[j] as usize));
                    }
                }
            }
        }
        // direction 2: every edge has at least one witnessing y
        for (u, v) in h.edges() {
            let mut witnessed = false;
            'scan: for y in 0..f.y_count() {
                let nbrs = f.neighbors_of_y(y);
                let (mut iu, mut iv) = (None, None);
                for (i, &x) in nbrs.iter().enumerate() {
                    if x as usize == u {
                        iu = Some(i);
                    }
                    if x as usize == v {
                        iv = Some(i);
                    }
                }
                if let (Some(i), Some(j)) = (iu, iv) {
                    if pa.part(y, i) != pa.part(y, j) {
                        witnessed = true;
                        break 'scan;
                    }
                }
            }
            assert!(witnessed, "edge ({u},{v}) lacks a witnessing point");
        }
    }

    #[test]
    fn partition_serialization_shape() {
        let f = hermitian_unital(2).unwrap();
        let (_, pa) = mv_partite_graph(&f, 2, 1).unwrap();
        let text = emit_partition(&f, &pa);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), f.incidence_count());
        // sorted by (y, x), parts in 1..=2
        let mut prev = (0u32, 0u32);
        for (i, line) in lines.iter().enumerate() {
            let mut it = line.split(' ');
            let y: u32 = it.next().unwrap().parse().unwrap();
            let x: u32 = it.next().unwrap().parse().unwrap();
            let p: u16 = it.next().unwrap().parse().unwrap();
            assert!(p == 1 || p == 2);
            if i > 0 {
                assert!((y, x) > prev);
            }
            prev = (y, x);
        }
    }
}
