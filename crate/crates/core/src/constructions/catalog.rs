//! Catalog of named graphs with known spectra, used as desk-scale stand-ins
//! for the large pseudorandom triangle-free hosts.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown graph name {0:?}")]
    Unknown(String),
    #[error("bad size in graph name {0:?}")]
    BadSize(String),
}

/// Names: `petersen`, `clebsch`, `hoffman_singleton`, `c<n>` (n >= 3),
/// `k<n>` (n >= 1), `empty<n>` (n >= 1). Vertex indexing is fixed by the
/// construction, so repeated calls are bit-identical.
pub fn named_graph(name: &str) -> Result<Graph, CatalogError> {
    match name {
        "petersen" => Ok(petersen()),
        "clebsch" => Ok(clebsch()),
        "hoffman_singleton" => Ok(hoffman_singleton()),
        _ => {
            let sized = |prefix: &str| -> Option<Result<usize, CatalogError>> {
                name.strip_prefix(prefix).map(|rest| {
                    rest.parse::<usize>()
                        .map_err(|_| CatalogError::BadSize(name.to_string()))
                })
            };
            if let Some(n) = sized("empty") {
                let n = n?;
                if n == 0 {
                    return Err(CatalogError::BadSize(name.to_string()));
                }
                return Ok(Graph::empty(n).with_label(name));
            }
            if let Some(n) = sized("c") {
                let n = n?;
                if n < 3 {
                    return Err(CatalogError::BadSize(name.to_string()));
                }
                let mut g = Graph::empty(n);
                for i in 0..n {
                    g.add_edge(i, (i + 1) % n);
                }
                return Ok(g.with_label(name));
            }
            if let Some(n) = sized("k") {
                let n = n?;
                if n == 0 {
                    return Err(CatalogError::BadSize(name.to_string()));
                }
                return Ok(Graph::complete(n).with_label(name));
            }
            Err(CatalogError::Unknown(name.to_string()))
        }
    }
}

/// Kneser construction: vertices are the 2-subsets of {0..4} in
/// lexicographic order, adjacent iff disjoint. 10 vertices, 3-regular.
fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let mut g = Graph::empty(10);
    for i in 0..10 {
        for j in (i + 1)..10 {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j);
            }
        }
    }
    g.with_label("petersen")
}

/// Folded 5-cube: vertices are 4-bit strings, adjacent iff they differ in a
/// standard basis vector or are complementary. 16 vertices, 5-regular,
/// triangle-free.
fn clebsch() -> Graph {
    let mut g = Graph::empty(16);
    for u in 0u32..16 {
        for v in (u + 1)..16 {
            let x = u ^ v;
            if x.count_ones() == 1 || x == 0b1111 {
                g.add_edge(u as usize, v as usize);
            }
        }
    }
    g.with_label("clebsch")
}

/// Robertson's pentagon/pentagram construction: pentagons P_h with steps of
/// 1, pentagrams Q_i with steps of 2, and cross edges joining vertex j of
/// P_h to vertex (h*i + j) mod 5 of Q_i. 50 vertices, 7-regular, girth 5.
fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| h * 5 + j; // 0..25
    let q = |i: usize, j: usize| 25 + i * 5 + j; // 25..50
    let mut g = Graph::empty(50);
    for h in 0..5 {
        for j in 0..5 {
            g.add_edge(p(h, j), p(h, (j + 1) % 5));
            g.add_edge(q(h, j), q(h, (j + 2) % 5));
        }
    }
    for h in 0..5 {
        for i in 0..5 {
            for j in 0..5 {
                g.add_edge(p(h, j), q(i, (h * i + j) % 5));
            }
        }
    }
    g.with_label("hoffman_singleton")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{contains_pattern, Pattern};

    #[test]
    fn petersen_shape() {
        let g = named_graph("petersen").unwrap();
        assert_eq!(g.n(), 10);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(contains_pattern(&g, &Pattern::clique(3).unwrap()).is_none());
    }

    #[test]
    fn clebsch_shape() {
        let g = named_graph("clebsch").unwrap();
        assert_eq!(g.n(), 16);
        assert!((0..16).all(|v| g.degree(v) == 5));
        assert!(contains_pattern(&g, &Pattern::clique(3).unwrap()).is_none());
    }

    #[test]
    fn hoffman_singleton_is_srg_50_7_0_1() {
        // adjacent vertices share 0 common neighbors, non-adjacent exactly 1;
        // together with 7-regularity this pins the graph uniquely
        let g = named_graph("hoffman_singleton").unwrap();
        assert_eq!(g.n(), 50);
        assert!((0..50).all(|v| g.degree(v) == 7));
        for u in 0..50 {
            for v in (u + 1)..50 {
                let common = g.neighbors(u).intersection_count(g.neighbors(v));
                if g.has_edge(u, v) {
                    assert_eq!(common, 0, "edge ({u},{v})");
                } else {
                    assert_eq!(common, 1, "non-edge ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn parameterized_names() {
        assert_eq!(named_graph("c5").unwrap().edge_count(), 5);
        assert_eq!(named_graph("k5").unwrap().edge_count(), 10);
        assert_eq!(named_graph("empty7").unwrap().edge_count(), 0);
        assert_eq!(named_graph("empty7").unwrap().n(), 7);
        assert!(named_graph("q3").is_err());
        assert!(named_graph("c2").is_err());
        assert!(named_graph("kx").is_err());
    }
}
