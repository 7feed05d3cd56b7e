//! Undirected simple graphs over indexed vertices with bitset adjacency rows.
//!
//! This is the universal carrier for every construction and search in the
//! crate. Graphs are immutable after construction in spirit: all operations
//! take `&Graph` and mutation is confined to builders.

use crate::bitset::Bitset;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while parsing or validating graph files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed header: expected \"n m\", got {0:?}")]
    MalformedHeader(String),
    #[error("edge line {line}: expected \"u v\", got {content:?}")]
    MalformedEdge { line: usize, content: String },
    #[error("edge line {line}: vertex {v} out of range (n = {n})")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("edge line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("edge line {line}: pair ({u}, {v}) is unsorted (need u < v)")]
    UnsortedPair { line: usize, u: usize, v: usize },
    #[error("edge line {line}: edge ({u}, {v}) duplicates or precedes an earlier edge")]
    DuplicateOrUnsorted { line: usize, u: usize, v: usize },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Undirected simple graph with one neighbor bitset per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    label: Option<String>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}{})",
            self.n,
            self.edge_count(),
            self.label.as_deref().map(|l| format!(", {l}")).unwrap_or_default()
        )
    }
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| Bitset::new(n)).collect(),
            label: None,
        }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Inserts the undirected edge {u, v}. Idempotent; panics on self-loops
    /// or out-of-range indices (construction-time programming errors).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Removes the undirected edge {u, v} if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|b| b.count()).sum::<usize>() / 2
    }

    /// Edges in lexicographic order (u < v).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &Bitset) -> usize {
        s.iter().map(|v| self.adj[v].intersection_count(s)).sum::<usize>() / 2
    }

    /// Degree of `v` into the set `s`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: &Bitset) -> usize {
        self.adj[v].intersection_count(s)
    }

    /// The subgraph induced on `s`, re-indexed by ascending original index.
    ///
    /// Also returns the mapping from new index to original vertex.
    pub fn induced_subgraph_indexed(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, verts))
    }

    /// The subgraph induced on `s`, re-indexed by ascending original index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        self.induced_subgraph_indexed(s).map(|(g, _)| g)
    }

    /// Graph with the vertices of `drop` removed (re-indexed ascending).
    pub fn delete_vertices(&self, drop: &Bitset) -> Graph {
        let mut keep = Bitset::full(self.n);
        keep.subtract(drop);
        let vs = VertexSet::from_bitset(keep);
        self.induced_subgraph(&vs).expect("keep set is in range")
    }
}

/// A set of vertices of some graph, with cached cardinality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    bits: Bitset,
    size: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            bits: Bitset::new(capacity),
            size: 0,
        }
    }

    pub fn full(capacity: usize) -> Self {
        VertexSet {
            bits: Bitset::full(capacity),
            size: capacity,
        }
    }

    pub fn from_bitset(bits: Bitset) -> Self {
        let size = bits.count();
        VertexSet { bits, size }
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        VertexSet::from_bitset(Bitset::from_indices(capacity, indices))
    }

    #[inline(always)]
    pub fn len(&self) -> usize {
        self.size
    }

    #[inline(always)]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline(always)]
    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        if !self.bits.contains(v) {
            self.bits.insert(v);
            self.size += 1;
        }
    }

    pub fn remove(&mut self, v: usize) {
        if self.bits.contains(v) {
            self.bits.remove(v);
            self.size -= 1;
        }
    }

    #[inline(always)]
    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.bits.is_subset_of(&other.bits)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_sorted_vec().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(de)?;
        let cap = v.iter().max().map_or(0, |&m| m + 1);
        Ok(VertexSet::from_indices(cap, v))
    }
}

// ----------------------------------------------------------------------------
// Graph file format
// ----------------------------------------------------------------------------
//
// Header line "n m", then m edge lines "u v" with 0 <= u < v < n, in strictly
// increasing lexicographic order, no duplicates, '\n' line endings, no
// trailing whitespace. `emit` terminates the file with a final newline;
// `parse` tolerates a missing final newline but nothing else.

/// Parses the canonical edge-list format.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    let (n, m) = parse_header(header)?;
    let mut g = Graph::empty(n);
    let mut prev: Option<(usize, usize)> = None;
    let mut found = 0usize;
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            // Only admissible as the residue of a trailing '\n'.
            let rest: Vec<&str> = text.split('\n').skip(i + 2).collect();
            if rest.is_empty() {
                break;
            }
            return Err(GraphError::MalformedEdge {
                line: i + 2,
                content: line.to_string(),
            });
        }
        let lineno = i + 2;
        let (u, v) = parse_edge_line(line, lineno)?;
        if u >= n || v >= n {
            return Err(GraphError::OutOfRange {
                line: lineno,
                v: u.max(v),
                n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line: lineno, v: u });
        }
        if u > v {
            return Err(GraphError::UnsortedPair { line: lineno, u, v });
        }
        if let Some(p) = prev {
            if (u, v) <= p {
                return Err(GraphError::DuplicateOrUnsorted { line: lineno, u, v });
            }
        }
        prev = Some((u, v));
        g.add_edge(u, v);
        found += 1;
    }
    if found != m {
        return Err(GraphError::EdgeCountMismatch {
            expected: m,
            found,
        });
    }
    Ok(g)
}

fn parse_header(header: &str) -> Result<(usize, usize), GraphError> {
    let mut it = header.split(' ');
    let bad = || GraphError::MalformedHeader(header.to_string());
    let n = it.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad)?;
    let m = it.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

fn parse_edge_line(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let bad = || GraphError::MalformedEdge {
        line: lineno,
        content: line.to_string(),
    };
    let mut it = line.split(' ');
    let u = it.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad)?;
    let v = it.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((u, v))
}

/// Emits the canonical edge-list format (bit-exact round-trip with `parse_graph`).
pub fn emit_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(16 + 8 * edges.len());
    out.push_str(&format!("{} {}\n", g.n(), edges.len()));
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = parse_graph("3 3\n0 1\n0 2\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn parse_edgeless() {
        let g = parse_graph("2 0").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_unsorted_pair() {
        let err = parse_graph("3 1\n1 0").unwrap_err();
        assert_eq!(err, GraphError::UnsortedPair { line: 2, u: 1, v: 0 });
    }

    #[test]
    fn parse_rejects_self_loop_and_duplicates() {
        assert!(matches!(
            parse_graph("3 1\n1 1").unwrap_err(),
            GraphError::SelfLoop { .. }
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1\n0 1").unwrap_err(),
            GraphError::DuplicateOrUnsorted { .. }
        ));
        assert!(matches!(
            parse_graph("3 2\n0 2\n0 1").unwrap_err(),
            GraphError::DuplicateOrUnsorted { .. }
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_and_bad_header() {
        assert!(matches!(
            parse_graph("3 1\n0 3").unwrap_err(),
            GraphError::OutOfRange { .. }
        ));
        assert!(matches!(
            parse_graph("x y\n").unwrap_err(),
            GraphError::MalformedHeader(_)
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1").unwrap_err(),
            GraphError::EdgeCountMismatch { expected: 2, found: 1 }
        ));
    }

    #[test]
    fn emit_parse_roundtrip_canonical() {
        let text = "4 3\n0 1\n0 3\n2 3\n";
        assert_eq!(emit_graph(&parse_graph(text).unwrap()), text);
    }

    #[test]
    fn induced_clique_is_hereditary() {
        let k4 = Graph::complete(4);
        let s = VertexSet::from_indices(4, [0, 1, 2]);
        let g = k4.induced_subgraph(&s).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn induced_nonadjacent_pair_of_c5() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let s = VertexSet::from_indices(5, [0, 2]);
        let g = c5.induced_subgraph(&s).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let g = Graph::complete(3);
        let s = VertexSet::from_indices(5, [0, 4]);
        assert!(matches!(
            g.induced_subgraph(&s).unwrap_err(),
            GraphError::VertexOutOfRange { v: 4, n: 3 }
        ));
    }

    #[test]
    fn vertex_set_size_tracks_popcount() {
        let mut s = VertexSet::new(10);
        s.insert(3);
        s.insert(3);
        s.insert(7);
        assert_eq!(s.len(), s.bits().count());
        s.remove(3);
        s.remove(3);
        assert_eq!(s.len(), 1);
        assert_eq!(s.len(), s.bits().count());
    }
}
