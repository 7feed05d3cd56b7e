//! Exact and heuristic maximum-`F`-free-induced-subgraph oracles.
//!
//! `max_pattern_free_exact` is a budget-guarded branch-and-bound over
//! include/exclude vertex decisions with incremental containment checks: the
//! carrier set is always `P`-free, so adding a vertex only needs the anchored
//! search through that vertex. Intended for graphs up to roughly 40 vertices;
//! the node budget is a hard stop, and exceeding it is an explicit error
//! rather than a result.
//!
//! A dedicated maximum-clique / maximum-independent-set solver (greedy
//! coloring bound) provides the independent cross-check route for the
//! `P = K_2` case and powers the larger pipeline searches.

use crate::bitset::Bitset;
use crate::graph::{Graph, VertexSet};
use crate::pattern::{contains_pattern_anchored, Pattern};
use crate::rng::SplitMix64;
use thiserror::Error;

/// Default decision budget for the exact searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget exceeded after {explored} decisions")]
    BudgetExceeded { explored: u64 },
}

/// Exact `alpha_F(G)`: a maximum vertex set whose induced subgraph is
/// `P`-free. Branch-and-bound on vertex inclusion, vertices in descending
/// degree order (most constrained first), include branch first.
pub fn max_pattern_free_exact(
    g: &Graph,
    p: &Pattern,
    node_budget: u64,
) -> Result<VertexSet, SearchError> {
    // note: the single-edge case is NOT delegated to the dedicated
    // independent-set solver; the two routes stay independent so they can
    // cross-check each other
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = VertexSet::new(n);
    let mut current = Bitset::new(n);
    let mut budget = node_budget;
    pf_search(g, p, &order, 0, &mut current, 0, &mut best, &mut budget)?;
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn pf_search(
    g: &Graph,
    p: &Pattern,
    order: &[usize],
    idx: usize,
    current: &mut Bitset,
    count: usize,
    best: &mut VertexSet,
    budget: &mut u64,
) -> Result<(), SearchError> {
    if count + (order.len() - idx) <= best.len() {
        return Ok(());
    }
    if idx == order.len() {
        if count > best.len() {
            *best = VertexSet::from_bitset(current.clone());
        }
        return Ok(());
    }
    if *budget == 0 {
        return Err(SearchError::BudgetExceeded { explored: 0 });
    }
    *budget -= 1;
    let v = order[idx];
    // include v when it creates no copy of P through v
    current.insert(v);
    if !contains_pattern_anchored(g, current, p, v) {
        if count + 1 > best.len() {
            *best = VertexSet::from_bitset(current.clone());
        }
        pf_search(g, p, order, idx + 1, current, count + 1, best, budget)?;
    }
    current.remove(v);
    pf_search(g, p, order, idx + 1, current, count, best, budget)
}

/// Deterministic seeded greedy lower bound for `alpha_F(G)`: scan a seeded
/// permutation, keep each vertex whose addition creates no copy of `P`.
pub fn max_pattern_free_greedy(g: &Graph, p: &Pattern, seed: u64) -> VertexSet {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    SplitMix64::new(seed).shuffle(&mut perm);
    greedy_over(g, p, &perm)
}

/// Greedy scan in the given vertex order.
pub fn greedy_over(g: &Graph, p: &Pattern, perm: &[usize]) -> VertexSet {
    let mut current = Bitset::new(g.n());
    let mut size = 0usize;
    for &v in perm {
        current.insert(v);
        if contains_pattern_anchored(g, &current, p, v) {
            current.remove(v);
        } else {
            size += 1;
        }
    }
    let s = VertexSet::from_bitset(current);
    debug_assert_eq!(s.len(), size);
    s
}

// ----------------------------------------------------------------------------
// Dedicated clique / independent-set solver
// ----------------------------------------------------------------------------

/// Exact maximum clique via branch-and-bound with a greedy coloring bound.
pub fn max_clique(g: &Graph, node_budget: u64) -> Result<VertexSet, SearchError> {
    let mut best: Vec<usize> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut budget = node_budget;
    mc_expand(g, Bitset::full(g.n()), &mut cur, &mut best, &mut budget)?;
    Ok(VertexSet::from_indices(g.n(), best))
}

/// Exact maximum independent set: maximum clique of the complement.
pub fn max_independent_set(g: &Graph, node_budget: u64) -> Result<VertexSet, SearchError> {
    let n = g.n();
    let mut comp = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                comp.add_edge(u, v);
            }
        }
    }
    max_clique(&comp, node_budget)
}

fn mc_expand(
    g: &Graph,
    cand: Bitset,
    cur: &mut Vec<usize>,
    best: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<(), SearchError> {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cand.is_empty() {
        return Ok(());
    }
    let (order, colors) = color_sort(g, &cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        let v = order[i];
        if cur.len() + colors[i] <= best.len() {
            return Ok(()); // colors ascend with i: everything left is bounded
        }
        if *budget == 0 {
            return Err(SearchError::BudgetExceeded { explored: 0 });
        }
        *budget -= 1;
        cur.push(v);
        let mut nc = cand.clone();
        nc.intersect_with(g.neighbors(v));
        mc_expand(g, nc, cur, best, budget)?;
        cur.pop();
        cand.remove(v);
    }
    Ok(())
}

/// Greedy coloring of `cand`; returns vertices grouped by color class with
/// their 1-based color numbers (ascending).
fn color_sort(g: &Graph, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Bitset> = Vec::new();
    for v in cand.iter() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if class.is_disjoint_from(g.neighbors(v)) {
                class.insert(v);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut c = Bitset::new(cand.capacity());
            c.insert(v);
            classes.push(c);
        }
    }
    let mut order = Vec::with_capacity(cand.count());
    let mut colors = Vec::with_capacity(cand.count());
    for (ci, class) in classes.iter().enumerate() {
        for v in class.iter() {
            order.push(v);
            colors.push(ci + 1);
        }
    }
    (order, colors)
}

// ----------------------------------------------------------------------------
// Bounded-size searches used by the pipelines
// ----------------------------------------------------------------------------

/// Searches `G[allowed]` for a `P`-free set of exactly `size` vertices.
/// Returns a witness if one exists, `None` if provably none, or the budget
/// error. For `P = K_2` the candidate bound uses a greedy matching
/// (`alpha(G[R]) <= |R| - matching`), which keeps the search tame well past
/// the generic `|E| + |R|` bound.
pub fn find_pattern_free_set(
    g: &Graph,
    allowed: &Bitset,
    p: &Pattern,
    size: usize,
    node_budget: u64,
) -> Result<Option<VertexSet>, SearchError> {
    let mut found = None;
    let mut budget = node_budget;
    enumerate_free_sets(g, allowed, p, size, &mut budget, &mut |set| {
        found = Some(VertexSet::from_indices(g.n(), set.iter().copied()));
        false // stop at the first witness
    })?;
    Ok(found)
}

/// Enumerates every `P`-free `size`-subset of `allowed` (as sorted vertex
/// lists, in lexicographic order) into `emit`; `emit` returns false to stop.
pub fn enumerate_free_sets(
    g: &Graph,
    allowed: &Bitset,
    p: &Pattern,
    size: usize,
    budget: &mut u64,
    emit: &mut dyn FnMut(&Vec<usize>) -> bool,
) -> Result<(), SearchError> {
    let mut current = Bitset::new(g.n());
    let mut members: Vec<usize> = Vec::with_capacity(size);
    fs_dfs(g, allowed, p, size, 0, &mut current, &mut members, budget, emit)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn fs_dfs(
    g: &Graph,
    allowed: &Bitset,
    p: &Pattern,
    size: usize,
    lo: usize,
    current: &mut Bitset,
    members: &mut Vec<usize>,
    budget: &mut u64,
    emit: &mut dyn FnMut(&Vec<usize>) -> bool,
) -> Result<bool, SearchError> {
    if members.len() == size {
        return Ok(emit(members));
    }
    // remaining pool above lo, minus neighbors for the independent-set case
    let mut pool = allowed.clone();
    if lo > 0 {
        pool.remove_upto(lo - 1);
    }
    if p.is_single_edge() {
        for &m in members.iter() {
            pool.subtract(g.neighbors(m));
        }
    }
    let need = size - members.len();
    if upper_bound_selectable(g, &pool, p) < need {
        return Ok(true);
    }
    for v in pool.iter() {
        if *budget == 0 {
            return Err(SearchError::BudgetExceeded { explored: 0 });
        }
        *budget -= 1;
        current.insert(v);
        let creates = contains_pattern_anchored(g, current, p, v);
        if creates {
            current.remove(v);
            continue;
        }
        members.push(v);
        let keep_going = fs_dfs(g, allowed, p, size, v + 1, current, members, budget, emit)?;
        members.pop();
        current.remove(v);
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bound on how many pool vertices a `P`-free extension can still take.
fn upper_bound_selectable(g: &Graph, pool: &Bitset, p: &Pattern) -> usize {
    let size = pool.count();
    if !p.is_single_edge() {
        return size;
    }
    // alpha(G[pool]) <= |pool| - (greedy maximal matching), since a vertex
    // cover needs at least one endpoint per matched edge
    let mut avail = pool.clone();
    let mut matched = 0usize;
    for v in pool.iter() {
        if !avail.contains(v) {
            continue;
        }
        let mut nbrs = g.neighbors(v).clone();
        nbrs.intersect_with(&avail);
        nbrs.remove(v);
        if let Some(w) = nbrs.min() {
            avail.remove(v);
            avail.remove(w);
            matched += 1;
        }
    }
    size - matched
}
