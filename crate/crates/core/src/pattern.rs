//! Forbidden patterns and subgraph-containment search.
//!
//! Containment is *subgraph* containment inside an induced carrier: a graph
//! `G` contains pattern `P` iff some injective map of `V(P)` into `V(G)`
//! sends every pattern edge to a `G`-edge. Witnesses are vertex-image sets.
//!
//! Each pattern kind gets a specialized backtracking search; the `Explicit`
//! kind uses a generic ordered-injection search. All searches accept a
//! candidate mask, so callers can test containment inside `G[mask]` without
//! materializing induced subgraphs, plus anchored variants that require the
//! copy to use a given vertex or realize a given edge. The anchored forms are
//! the incremental checks inside the branch-and-bound oracles: when a carrier
//! was `P`-free before a vertex (or edge) was added, any new copy must pass
//! through the addition.

use crate::bitset::Bitset;
use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("clique pattern needs t >= 2, got {0}")]
    CliqueTooSmall(usize),
    #[error("cycle pattern needs k >= 3, got {0}")]
    CycleTooShort(usize),
    #[error("complete multipartite pattern needs r >= 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("complete multipartite part sizes must be >= 1")]
    EmptyPart,
    #[error("explicit pattern capped at 16 vertices, got {0}")]
    ExplicitTooLarge(usize),
    #[error("unrecognized pattern spec {0:?} (expected K<t>, C<k>, or K<s1>,<s2>,...)")]
    Unrecognized(String),
}

/// A forbidden graph `F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Pattern {
    /// Complete graph `K_t`.
    Clique(usize),
    /// Cycle `C_k`.
    Cycle(usize),
    /// Complete multipartite graph with the given part sizes.
    CompleteMultipartite(Vec<usize>),
    /// An arbitrary small graph given by its edge list over `0..order`.
    Explicit { order: usize, edges: Vec<(usize, usize)> },
}

impl Pattern {
    pub fn clique(t: usize) -> Result<Pattern, PatternError> {
        if t < 2 {
            return Err(PatternError::CliqueTooSmall(t));
        }
        Ok(Pattern::Clique(t))
    }

    pub fn cycle(k: usize) -> Result<Pattern, PatternError> {
        if k < 3 {
            return Err(PatternError::CycleTooShort(k));
        }
        Ok(Pattern::Cycle(k))
    }

    pub fn multipartite(sizes: Vec<usize>) -> Result<Pattern, PatternError> {
        if sizes.len() < 2 {
            return Err(PatternError::TooFewParts(sizes.len()));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(PatternError::EmptyPart);
        }
        Ok(Pattern::CompleteMultipartite(sizes))
    }

    pub fn explicit(g: &Graph) -> Result<Pattern, PatternError> {
        if g.n() > 16 {
            return Err(PatternError::ExplicitTooLarge(g.n()));
        }
        Ok(Pattern::Explicit {
            order: g.n(),
            edges: g.edges(),
        })
    }

    /// Parses `K<t>`, `C<k>`, or `K<s1>,<s2>,...`.
    pub fn parse(spec: &str) -> Result<Pattern, PatternError> {
        let bad = || PatternError::Unrecognized(spec.to_string());
        if let Some(rest) = spec.strip_prefix(['K', 'k']) {
            if rest.contains(',') {
                let sizes: Result<Vec<usize>, _> = rest.split(',').map(|t| t.parse()).collect();
                return Pattern::multipartite(sizes.map_err(|_| bad())?);
            }
            return Pattern::clique(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = spec.strip_prefix(['C', 'c']) {
            return Pattern::cycle(rest.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    /// True when the pattern is a single edge (K_2, equivalently the
    /// two-part all-ones multipartite signature); pattern-free then means
    /// independent, which unlocks matching-based pruning.
    pub fn is_single_edge(&self) -> bool {
        match self {
            Pattern::Clique(2) => true,
            Pattern::CompleteMultipartite(s) => s.len() == 2 && s.iter().all(|&x| x == 1),
            _ => false,
        }
    }

    /// Total vertex count `s` of the pattern.
    pub fn order(&self) -> usize {
        match self {
            Pattern::Clique(t) => *t,
            Pattern::Cycle(k) => *k,
            Pattern::CompleteMultipartite(sizes) => sizes.iter().sum(),
            Pattern::Explicit { order, .. } => *order,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Pattern::Clique(t) => t * (t - 1) / 2,
            Pattern::Cycle(k) => *k,
            Pattern::CompleteMultipartite(sizes) => {
                let s: usize = sizes.iter().sum();
                (s * s - sizes.iter().map(|x| x * x).sum::<usize>()) / 2
            }
            Pattern::Explicit { edges, .. } => edges.len(),
        }
    }

    /// Materializes the pattern as a concrete graph (vertices `0..order`,
    /// multipartite parts laid out consecutively).
    pub fn to_graph(&self) -> Graph {
        match self {
            Pattern::Clique(t) => Graph::complete(*t),
            Pattern::Cycle(k) => {
                let mut g = Graph::empty(*k);
                for i in 0..*k {
                    g.add_edge(i, (i + 1) % *k);
                }
                g
            }
            Pattern::CompleteMultipartite(sizes) => {
                let s: usize = sizes.iter().sum();
                let mut part = vec![0usize; s];
                let mut v = 0;
                for (i, &sz) in sizes.iter().enumerate() {
                    for _ in 0..sz {
                        part[v] = i;
                        v += 1;
                    }
                }
                let mut g = Graph::empty(s);
                for u in 0..s {
                    for w in (u + 1)..s {
                        if part[u] != part[w] {
                            g.add_edge(u, w);
                        }
                    }
                }
                g
            }
            Pattern::Explicit { order, edges } => Graph::from_edges(*order, edges.iter().copied()),
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pattern::Clique(t) => write!(f, "K{t}"),
            Pattern::Cycle(k) => write!(f, "C{k}"),
            Pattern::CompleteMultipartite(sizes) => {
                let parts: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "K{}", parts.join(","))
            }
            Pattern::Explicit { order, edges } => write!(f, "explicit(n={order},m={})", edges.len()),
        }
    }
}

// ----------------------------------------------------------------------------
// Containment search
// ----------------------------------------------------------------------------

/// Does `G` contain `P` as a subgraph? Returns the image set if so.
pub fn contains_pattern(g: &Graph, p: &Pattern) -> Option<VertexSet> {
    contains_pattern_within(g, &Bitset::full(g.n()), p)
}

/// Containment restricted to `G[mask]`.
pub fn contains_pattern_within(g: &Graph, mask: &Bitset, p: &Pattern) -> Option<VertexSet> {
    if p.order() > mask.count() {
        return None;
    }
    let found = match p {
        Pattern::Clique(t) => find_clique(g, mask, *t, None),
        Pattern::Cycle(k) => find_cycle(g, mask, *k, None),
        Pattern::CompleteMultipartite(sizes) => find_multipartite(g, mask, sizes, None),
        Pattern::Explicit { order, edges } => find_explicit(g, mask, *order, edges, None),
    };
    found.map(|vs| VertexSet::from_indices(g.n(), vs))
}

/// Does `G[mask]` contain a copy of `P` that uses `anchor`?
pub fn contains_pattern_anchored(g: &Graph, mask: &Bitset, p: &Pattern, anchor: usize) -> bool {
    debug_assert!(mask.contains(anchor));
    if p.order() > mask.count() {
        return false;
    }
    let res = match p {
        Pattern::Clique(t) => find_clique(g, mask, *t, Some(anchor)),
        Pattern::Cycle(k) => find_cycle(g, mask, *k, Some(anchor)),
        Pattern::CompleteMultipartite(sizes) => find_multipartite(g, mask, sizes, Some(anchor)),
        Pattern::Explicit { order, edges } => find_explicit(g, mask, *order, edges, Some(anchor)),
    };
    res.is_some()
}

/// Does `G[mask]` contain a copy of `P` in which the pair `{u, v}` realizes a
/// pattern edge?
pub fn contains_pattern_through_edge(
    g: &Graph,
    mask: &Bitset,
    p: &Pattern,
    u: usize,
    v: usize,
) -> bool {
    debug_assert!(g.has_edge(u, v));
    if !mask.contains(u) || !mask.contains(v) {
        return false;
    }
    match p {
        Pattern::Clique(t) => {
            if *t == 2 {
                return true;
            }
            if *t > mask.count() {
                return false;
            }
            let mut cands = g.neighbors(u).clone();
            cands.intersect_with(g.neighbors(v));
            cands.intersect_with(mask);
            find_clique(g, &cands, *t - 2, None).is_some()
        }
        Pattern::Cycle(k) => find_cycle_through_edge(g, mask, *k, u, v),
        Pattern::CompleteMultipartite(sizes) => find_multipartite_edge(g, mask, sizes, u, v),
        Pattern::Explicit { order, edges } => find_explicit_edge(g, mask, *order, edges, u, v),
    }
}

// --- cliques ---

/// Finds `t` mutually adjacent vertices inside `mask`; if `anchor` is given
/// the clique must contain it. `t = 0` succeeds with the empty clique.
fn find_clique(g: &Graph, mask: &Bitset, t: usize, anchor: Option<usize>) -> Option<Vec<usize>> {
    let mut stack = Vec::with_capacity(t);
    match anchor {
        Some(a) => {
            if !mask.contains(a) || t == 0 {
                return (t == 0).then(Vec::new);
            }
            stack.push(a);
            let mut cands = g.neighbors(a).clone();
            cands.intersect_with(mask);
            clique_extend(g, &cands, t - 1, &mut stack).then_some(stack)
        }
        None => clique_extend(g, mask, t, &mut stack).then_some(stack),
    }
}

fn clique_extend(g: &Graph, cands: &Bitset, need: usize, stack: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    if cands.count() < need {
        return false;
    }
    for v in cands.iter() {
        stack.push(v);
        let mut next = cands.clone();
        next.intersect_with(g.neighbors(v));
        next.remove_upto(v); // enumerate cliques ascending: each one once
        if clique_extend(g, &next, need - 1, stack) {
            return true;
        }
        stack.pop();
    }
    false
}

// --- cycles ---

fn find_cycle(g: &Graph, mask: &Bitset, k: usize, anchor: Option<usize>) -> Option<Vec<usize>> {
    match anchor {
        Some(a) => {
            if !mask.contains(a) {
                return None;
            }
            cycle_from(g, mask, k, a, false)
        }
        None => {
            // start = minimum vertex of the cycle
            for start in mask.iter() {
                if let Some(c) = cycle_from(g, mask, k, start, true) {
                    return Some(c);
                }
            }
            None
        }
    }
}

/// Simple-path DFS for a cycle of length exactly `k` through `start`.
/// With `above_start`, non-start vertices are restricted to indices > start.
fn cycle_from(
    g: &Graph,
    mask: &Bitset,
    k: usize,
    start: usize,
    above_start: bool,
) -> Option<Vec<usize>> {
    let mut path = vec![start];
    let mut visited = Bitset::new(g.n());
    visited.insert(start);
    cycle_dfs(g, mask, k, start, above_start, true, &mut path, &mut visited).then_some(path)
}

/// `sym_break` prunes the reversed traversal of each cycle (second vertex
/// below the last); it must be off when the first edge of the path is pinned.
#[allow(clippy::too_many_arguments)]
fn cycle_dfs(
    g: &Graph,
    mask: &Bitset,
    k: usize,
    start: usize,
    above_start: bool,
    sym_break: bool,
    path: &mut Vec<usize>,
    visited: &mut Bitset,
) -> bool {
    let cur = *path.last().unwrap();
    if path.len() == k {
        return g.has_edge(cur, start);
    }
    let mut cands = g.neighbors(cur).clone();
    cands.intersect_with(mask);
    for v in cands.iter() {
        if visited.contains(v) || (above_start && v <= start) {
            continue;
        }
        if sym_break && path.len() == k - 1 && k > 3 && v < path[1] {
            continue;
        }
        path.push(v);
        visited.insert(v);
        if cycle_dfs(g, mask, k, start, above_start, sym_break, path, visited) {
            return true;
        }
        visited.remove(v);
        path.pop();
    }
    false
}

fn find_cycle_through_edge(g: &Graph, mask: &Bitset, k: usize, u: usize, v: usize) -> bool {
    if k == 3 {
        let mut common = g.neighbors(u).clone();
        common.intersect_with(g.neighbors(v));
        common.intersect_with(mask);
        return !common.is_empty();
    }
    // path p0 = u, p1 = v, ..., p_{k-1}, closing edge p_{k-1} ~ u
    let mut path = vec![u, v];
    let mut visited = Bitset::new(g.n());
    visited.insert(u);
    visited.insert(v);
    cycle_dfs(g, mask, k, u, false, false, &mut path, &mut visited)
}

// --- complete multipartite ---

fn find_multipartite(
    g: &Graph,
    mask: &Bitset,
    sizes: &[usize],
    anchor: Option<usize>,
) -> Option<Vec<usize>> {
    let mut sig: Vec<usize> = sizes.to_vec();
    sig.sort_unstable_by(|a, b| b.cmp(a));
    match anchor {
        None => {
            let mut chosen = Vec::new();
            mp_exists(g, &sig, 0, mask.clone(), None, &mut chosen).then_some(chosen)
        }
        Some(a) => {
            // the anchor's part matters only through its size
            let mut tried: Vec<usize> = Vec::new();
            for i in 0..sig.len() {
                if tried.contains(&sig[i]) {
                    continue;
                }
                tried.push(sig[i]);
                let mut order = sig.clone();
                order.swap(0, i);
                let mut chosen = Vec::new();
                if mp_exists(g, &order, 0, mask.clone(), Some(a), &mut chosen) {
                    return Some(chosen);
                }
            }
            None
        }
    }
}

/// Fills parts in order. `common` is `mask` intersected with the
/// neighborhoods of every vertex in completed parts. When `anchor` is set it
/// is forced into the part being filled.
fn mp_exists(
    g: &Graph,
    sig: &[usize],
    part: usize,
    common: Bitset,
    anchor: Option<usize>,
    chosen: &mut Vec<usize>,
) -> bool {
    if part == sig.len() {
        return true;
    }
    let size = sig[part];
    if common.count() < size {
        return false;
    }
    let mut members: Vec<usize> = Vec::with_capacity(size);
    let pool = match anchor {
        Some(a) => {
            if !common.contains(a) {
                return false;
            }
            members.push(a);
            let mut p = common.clone();
            p.remove(a);
            p
        }
        None => common.clone(),
    };
    mp_members(g, sig, part, &common, &pool, size, 0, &mut members, chosen)
}

/// Extends `members` to `size` by ascending draws from `pool`; any forced
/// prefix (the anchor) is unconstrained relative to the drawn elements.
#[allow(clippy::too_many_arguments)]
fn mp_members(
    g: &Graph,
    sig: &[usize],
    part: usize,
    common: &Bitset,
    pool: &Bitset,
    size: usize,
    lo: usize,
    members: &mut Vec<usize>,
    chosen: &mut Vec<usize>,
) -> bool {
    if members.len() == size {
        let mut next = common.clone();
        for &m in members.iter() {
            next.intersect_with(g.neighbors(m));
        }
        let mark = chosen.len();
        chosen.extend_from_slice(members);
        if mp_exists(g, sig, part + 1, next, None, chosen) {
            return true;
        }
        chosen.truncate(mark);
        return false;
    }
    for x in pool.iter() {
        if x < lo {
            continue;
        }
        members.push(x);
        if mp_members(g, sig, part, common, pool, size, x + 1, members, chosen) {
            return true;
        }
        members.pop();
    }
    false
}

fn find_multipartite_edge(g: &Graph, mask: &Bitset, sizes: &[usize], u: usize, v: usize) -> bool {
    // u and v lie in two different parts; which parts only matters through
    // the ordered pair of their sizes
    let mut sig: Vec<usize> = sizes.to_vec();
    sig.sort_unstable_by(|a, b| b.cmp(a));
    let mut tried: Vec<(usize, usize)> = Vec::new();
    for i in 0..sig.len() {
        for j in 0..sig.len() {
            if i == j || tried.contains(&(sig[i], sig[j])) {
                continue;
            }
            tried.push((sig[i], sig[j]));
            let mut rest = sig.clone();
            // remove one occurrence of each chosen size
            let pi = rest.iter().position(|&x| x == sig[i]).unwrap();
            rest.remove(pi);
            let pj = rest.iter().position(|&x| x == sig[j]).unwrap();
            rest.remove(pj);
            let mut order = vec![sig[i], sig[j]];
            order.extend(rest);
            if mp_edge_fill(g, mask, &order, u, v) {
                return true;
            }
        }
    }
    false
}

/// Parts in `sig` order with `u` forced into part 0 and `v` into part 1.
fn mp_edge_fill(g: &Graph, mask: &Bitset, sig: &[usize], u: usize, v: usize) -> bool {
    let mut pool0 = mask.clone();
    pool0.remove(u);
    pool0.remove(v); // v goes to part 1, never part 0
    let mut members = vec![u];
    mp_members_cb(g, &pool0, sig[0], 0, &mut members, &mut |p0| {
        let mut common0 = mask.clone();
        for &x in p0.iter() {
            common0.intersect_with(g.neighbors(x));
        }
        if !common0.contains(v) {
            return false;
        }
        let mut pool1 = common0.clone();
        pool1.remove(v);
        let mut members1 = vec![v];
        mp_members_cb(g, &pool1, sig[1], 0, &mut members1, &mut |p1| {
            let mut common1 = common0.clone();
            for &x in p1.iter() {
                common1.intersect_with(g.neighbors(x));
            }
            let mut chosen = Vec::new();
            mp_exists(g, &sig[2..], 0, common1, None, &mut chosen)
        })
    })
}

/// Ascending completions of `members` from `pool`; `done` returns true to
/// stop the whole enumeration (success).
fn mp_members_cb(
    g: &Graph,
    pool: &Bitset,
    size: usize,
    lo: usize,
    members: &mut Vec<usize>,
    done: &mut dyn FnMut(&Vec<usize>) -> bool,
) -> bool {
    if members.len() == size {
        return done(members);
    }
    for x in pool.iter() {
        if x < lo {
            continue;
        }
        members.push(x);
        if mp_members_cb(g, pool, size, x + 1, members, done) {
            return true;
        }
        members.pop();
    }
    false
}

// --- explicit patterns ---

fn find_explicit(
    g: &Graph,
    mask: &Bitset,
    order: usize,
    edges: &[(usize, usize)],
    anchor: Option<usize>,
) -> Option<Vec<usize>> {
    if order == 0 {
        return Some(Vec::new());
    }
    let pat = explicit_adjacency(order, edges);
    match anchor {
        None => {
            let perm = connectivity_order(order, &pat, None);
            explicit_search(g, mask, &pat, &perm, &[])
        }
        Some(a) => {
            // the anchor may play the role of any pattern vertex
            for slot in 0..order {
                let perm = connectivity_order(order, &pat, Some(slot));
                if let Some(img) = explicit_search(g, mask, &pat, &perm, &[a]) {
                    return Some(img);
                }
            }
            None
        }
    }
}

fn find_explicit_edge(
    g: &Graph,
    mask: &Bitset,
    order: usize,
    edges: &[(usize, usize)],
    u: usize,
    v: usize,
) -> bool {
    let pat = explicit_adjacency(order, edges);
    for &(a, b) in edges {
        for (pa, pb) in [(a, b), (b, a)] {
            let mut perm = vec![pa, pb];
            perm.extend((0..order).filter(|&x| x != pa && x != pb));
            if explicit_search(g, mask, &pat, &perm, &[u, v]).is_some() {
                return true;
            }
        }
    }
    false
}

fn explicit_adjacency(order: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
    let mut adj = vec![Bitset::new(order); order];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

/// Orders pattern vertices so each one (after any forced first vertex) has as
/// many already-ordered neighbors as possible; ties by degree, then index.
fn connectivity_order(order: usize, pat: &[Bitset], first: Option<usize>) -> Vec<usize> {
    let mut perm: Vec<usize> = Vec::with_capacity(order);
    let mut placed = Bitset::new(order);
    if let Some(f) = first {
        perm.push(f);
        placed.insert(f);
    }
    while perm.len() < order {
        let mut best_v = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..order {
            if placed.contains(v) {
                continue;
            }
            let key = (pat[v].intersection_count(&placed), pat[v].count());
            if best_v == usize::MAX || key > best_key {
                best_key = key;
                best_v = v;
            }
        }
        placed.insert(best_v);
        perm.push(best_v);
    }
    perm
}

/// Injection search mapping pattern vertices in `perm` order; the first
/// `pins.len()` pattern vertices of `perm` are forced onto `pins`.
fn explicit_search(
    g: &Graph,
    mask: &Bitset,
    pat: &[Bitset],
    perm: &[usize],
    pins: &[usize],
) -> Option<Vec<usize>> {
    let order = pat.len();
    let mut image = vec![usize::MAX; order];
    let mut used = Bitset::new(g.n());
    for (d, &target) in pins.iter().enumerate() {
        if !mask.contains(target) || used.contains(target) {
            return None;
        }
        let pv = perm[d];
        for e in 0..d {
            if pat[pv].contains(perm[e]) && !g.has_edge(target, image[perm[e]]) {
                return None;
            }
        }
        image[pv] = target;
        used.insert(target);
    }
    explicit_dfs(g, mask, pat, perm, pins.len(), &mut image, &mut used).then_some(image)
}

fn explicit_dfs(
    g: &Graph,
    mask: &Bitset,
    pat: &[Bitset],
    perm: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Bitset,
) -> bool {
    if depth == perm.len() {
        return true;
    }
    let pv = perm[depth];
    let pdeg = pat[pv].count();
    let mut cands = mask.clone();
    for e in 0..depth {
        if pat[pv].contains(perm[e]) {
            cands.intersect_with(g.neighbors(image[perm[e]]));
        }
    }
    for c in cands.iter() {
        if used.contains(c) || g.neighbors(c).intersection_count(mask) < pdeg {
            continue;
        }
        image[pv] = c;
        used.insert(c);
        if explicit_dfs(g, mask, pat, perm, depth + 1, image, used) {
            return true;
        }
        used.remove(c);
        image[pv] = usize::MAX;
    }
    false
}

// ----------------------------------------------------------------------------
// Copy enumeration (hyperedges of the copy hypergraph)
// ----------------------------------------------------------------------------

/// Enumerates the distinct vertex sets of all copies of the complete
/// multipartite pattern with part sizes `sizes` inside `G[mask]`, as sorted
/// `s`-sets in lexicographic order. Errs with the running count once more
/// than `max_copies` distinct sets are found.
pub fn enumerate_multipartite_copies(
    g: &Graph,
    mask: &Bitset,
    sizes: &[usize],
    max_copies: usize,
) -> Result<Vec<Vec<usize>>, usize> {
    let mut sig: Vec<usize> = sizes.to_vec();
    sig.sort_unstable_by(|a, b| b.cmp(a));
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    enumerate_parts(g, &sig, 0, mask.clone(), &mut parts, &mut |parts| {
        let mut set: Vec<usize> = parts.iter().flatten().copied().collect();
        set.sort_unstable();
        seen.insert(set);
        seen.len() <= max_copies
    });
    if seen.len() > max_copies {
        return Err(seen.len());
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Backtracking over canonical partitions: parts in descending size order,
/// equal-size runs ordered by least element, members ascending within parts.
/// `emit` returns false to abort everything.
fn enumerate_parts(
    g: &Graph,
    sig: &[usize],
    part: usize,
    common: Bitset,
    parts: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&Vec<Vec<usize>>) -> bool,
) -> bool {
    if part == sig.len() {
        return emit(parts);
    }
    let min_first = if part > 0 && sig[part] == sig[part - 1] {
        parts[part - 1][0] + 1
    } else {
        0
    };
    let mut members: Vec<usize> = Vec::with_capacity(sig[part]);
    all_combinations(&common, sig[part], min_first, &mut members, &mut |members| {
        let mut next = common.clone();
        for &m in members.iter() {
            next.intersect_with(g.neighbors(m));
        }
        parts.push(members.clone());
        let keep_going = enumerate_parts(g, sig, part + 1, next, parts, emit);
        parts.pop();
        keep_going
    })
}

/// Ascending combinations of `size` elements of `pool` with first element at
/// least `min_first`. `f` returns false to abort; the return value propagates
/// whether to keep going.
fn all_combinations(
    pool: &Bitset,
    size: usize,
    min_first: usize,
    members: &mut Vec<usize>,
    f: &mut dyn FnMut(&Vec<usize>) -> bool,
) -> bool {
    if members.len() == size {
        return f(members);
    }
    let lo = members.last().map_or(min_first, |&m| m + 1);
    for x in pool.iter() {
        if x < lo {
            continue;
        }
        members.push(x);
        let keep_going = all_combinations(pool, size, min_first, members, f);
        members.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_in_k4() {
        let k4 = Graph::complete(4);
        let w = contains_pattern(&k4, &Pattern::clique(3).unwrap()).unwrap();
        assert_eq!(w.len(), 3);
        let vs: Vec<usize> = w.iter().collect();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(k4.has_edge(vs[i], vs[j]));
            }
        }
    }

    #[test]
    fn petersen_has_no_c4_or_triangle() {
        let p = crate::constructions::named_graph("petersen").unwrap();
        assert!(contains_pattern(&p, &Pattern::cycle(4).unwrap()).is_none());
        assert!(contains_pattern(&p, &Pattern::clique(3).unwrap()).is_none());
        assert!(contains_pattern(&p, &Pattern::cycle(5).unwrap()).is_some());
        assert!(contains_pattern(&p, &Pattern::cycle(6).unwrap()).is_some());
    }

    #[test]
    fn k22_inside_k33() {
        let k33 = Pattern::multipartite(vec![3, 3]).unwrap().to_graph();
        let w = contains_pattern(&k33, &Pattern::multipartite(vec![2, 2]).unwrap());
        assert!(w.is_some());
        assert_eq!(w.unwrap().len(), 4);
    }

    #[test]
    fn multipartite_needs_cross_edges_only() {
        // C4 is exactly K_{2,2}
        let c4 = Pattern::cycle(4).unwrap().to_graph();
        assert!(contains_pattern(&c4, &Pattern::multipartite(vec![2, 2]).unwrap()).is_some());
        // path P4 is not
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert!(contains_pattern(&p4, &Pattern::multipartite(vec![2, 2]).unwrap()).is_none());
    }

    #[test]
    fn pattern_too_large_is_false() {
        let k3 = Graph::complete(3);
        assert!(contains_pattern(&k3, &Pattern::clique(4).unwrap()).is_none());
    }

    #[test]
    fn explicit_path_search() {
        let p4 = Pattern::explicit(&Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)])).unwrap();
        let c5 = Pattern::cycle(5).unwrap().to_graph();
        assert!(contains_pattern(&c5, &p4).is_some());
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(contains_pattern(&star, &p4).is_none());
    }

    #[test]
    fn anchored_agrees_with_set_difference() {
        // if G[mask \ v] is P-free, G[mask] contains P iff a copy runs through v
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 2)]);
        for p in [
            Pattern::cycle(4).unwrap(),
            Pattern::cycle(5).unwrap(),
            Pattern::clique(2).unwrap(),
            Pattern::multipartite(vec![1, 2]).unwrap(),
        ] {
            let full = Bitset::full(6);
            for v in 0..6 {
                let mut without = full.clone();
                without.remove(v);
                let with_v = contains_pattern_within(&g, &full, &p).is_some();
                let wo_v = contains_pattern_within(&g, &without, &p).is_some();
                let anchored = contains_pattern_anchored(&g, &full, &p, v);
                assert_eq!(with_v, wo_v || anchored, "pattern {p}, vertex {v}");
            }
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(Pattern::parse("K3").unwrap(), Pattern::Clique(3));
        assert_eq!(Pattern::parse("C4").unwrap(), Pattern::Cycle(4));
        assert_eq!(
            Pattern::parse("K2,2").unwrap(),
            Pattern::CompleteMultipartite(vec![2, 2])
        );
        assert!(Pattern::parse("Q7").is_err());
        assert!(Pattern::parse("K1").is_err());
        assert!(Pattern::parse("C2").is_err());
    }

    #[test]
    fn multipartite_copy_enumeration_on_k4() {
        let k4 = Graph::complete(4);
        let copies =
            enumerate_multipartite_copies(&k4, &Bitset::full(4), &[1, 1, 1], 1000).unwrap();
        assert_eq!(copies.len(), 4);
        let c22 = enumerate_multipartite_copies(&k4, &Bitset::full(4), &[2, 2], 1000).unwrap();
        assert_eq!(c22, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn copy_enumeration_budget() {
        let k6 = Graph::complete(6);
        assert!(enumerate_multipartite_copies(&k6, &Bitset::full(6), &[1, 1], 3).is_err());
    }

    #[test]
    fn edge_anchored_detects_new_copies() {
        let mut g = Pattern::cycle(5).unwrap().to_graph();
        g.add_edge(0, 2);
        let full = Bitset::full(5);
        assert!(contains_pattern_through_edge(&g, &full, &Pattern::clique(3).unwrap(), 0, 2));
        assert!(contains_pattern_through_edge(&g, &full, &Pattern::cycle(4).unwrap(), 0, 2));
        // but no C4 arises through an original cycle edge alone in C5
        let c5 = Pattern::cycle(5).unwrap().to_graph();
        assert!(!contains_pattern_through_edge(&c5, &full, &Pattern::cycle(4).unwrap(), 0, 1));
    }

    #[test]
    fn cycle_edge_anchored_no_orientation_blindspot() {
        // C4 on {0,1,2,3}: every edge of it must report a C4 through itself
        let c4 = Pattern::cycle(4).unwrap().to_graph();
        let full = Bitset::full(4);
        for (u, v) in c4.edges() {
            assert!(contains_pattern_through_edge(&c4, &full, &Pattern::cycle(4).unwrap(), u, v));
            assert!(contains_pattern_through_edge(&c4, &full, &Pattern::cycle(4).unwrap(), v, u));
        }
    }
}
