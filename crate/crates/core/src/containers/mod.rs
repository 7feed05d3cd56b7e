//! The graph container algorithm: fingerprint extraction, container
//! reconstruction, and certificate checking.
//!
//! Given a locally dense host G and a `P`-independent set S, the algorithm
//! splits S into a high-degree part S_h, a short fingerprint T, and certifies
//! that the rest of S lies inside a small container C that depends only on
//! (S_h, T, |S|). The loop repeatedly takes the maximum-degree vertex u of
//! the surviving arena A (ties broken by a fixed ordering), branches on
//! whether u belongs to S, counts fingerprint hits against arena neighbors,
//! and evicts vertices whose hit count exceeds the degree threshold.

mod count;
mod goodness;
mod hypergraph;

pub use count::{fingerprint_count_bound, ln_binomial, CountBound, CountBoundError};
pub use goodness::{
    goodness_check, goodness_check_exec, js_parameters, GoodnessReport, GoodnessVerdict, JsError,
    JsParameters,
};
pub use hypergraph::{hypergraph_stats, HypergraphError, HypergraphStats, PreconditionVerdict};

use crate::bitset::Bitset;
use crate::graph::{Graph, VertexSet};
use crate::pattern::{contains_pattern_within, Pattern};
use crate::turan::TuranUpperFn;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ContainerError {
    #[error("density coefficient d must be positive, got {0}")]
    BadDensity(f64),
    #[error("container threshold r must be nonnegative, got {0}")]
    BadThreshold(f64),
    #[error("host graph needs n >= 2")]
    DegenerateHost,
    #[error("S is not pattern-independent (a copy of the forbidden pattern lies inside)")]
    NotIndependent,
    #[error("hypothesis ex(|S|) * d >= log n violated: {lhs} < {rhs}")]
    HypothesisViolated { lhs: f64, rhs: f64 },
    #[error("ordering pi must be a permutation of the vertices")]
    BadOrdering,
    #[error("fingerprint inconsistent with replay: {0}")]
    InconsistentFingerprint(String),
}

/// An admissible, monotone upper bound on `s -> ex(s, F)`.
#[derive(Clone, Debug)]
pub enum ExBound {
    Turan(TuranUpperFn),
    /// Explicit table (clamped at the last entry); must be nondecreasing.
    Table(Vec<u64>),
}

impl ExBound {
    pub fn auto(pattern: Pattern) -> Self {
        ExBound::Turan(TuranUpperFn::auto(pattern))
    }

    pub fn eval(&self, s: usize) -> u64 {
        match self {
            ExBound::Turan(f) => f.eval(s),
            ExBound::Table(t) => t[s.min(t.len() - 1)],
        }
    }
}

/// Parameters of the container algorithm.
#[derive(Clone, Debug)]
pub struct ContainerParams {
    /// density coefficient (the hypothesis is e(G[A]) >= d |A|^2)
    pub d: f64,
    /// container-size threshold: the loop stops once |A| <= r
    pub r: f64,
    pub ex: ExBound,
    /// tie-break ordering; `None` means ascending vertex index
    pub pi: Option<Vec<usize>>,
}

impl ContainerParams {
    pub fn new(d: f64, r: f64, ex: ExBound) -> Result<Self, ContainerError> {
        if !(d > 0.0) {
            return Err(ContainerError::BadDensity(d));
        }
        if !(r >= 0.0) {
            return Err(ContainerError::BadThreshold(r));
        }
        Ok(ContainerParams { d, r, ex, pi: None })
    }

    pub fn with_ordering(mut self, pi: Vec<usize>) -> Self {
        self.pi = Some(pi);
        self
    }

    fn delta_for(&self, g: &Graph, s: usize) -> Result<f64, ContainerError> {
        if g.n() < 2 {
            return Err(ContainerError::DegenerateHost);
        }
        let ln_n = (g.n() as f64).ln();
        let ex_s = self.ex.eval(s) as f64;
        if ex_s * self.d < ln_n {
            return Err(ContainerError::HypothesisViolated {
                lhs: ex_s * self.d,
                rhs: ln_n,
            });
        }
        Ok((ex_s * self.d / ln_n).sqrt())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub i: u32,
    pub u: u32,
    pub in_s: bool,
}

/// Output of the container algorithm. The fingerprint is (S_h, T, |S|); C is
/// reconstructible from it alone.
#[derive(Clone, Debug, Serialize)]
pub struct ContainerCertificate {
    pub s_h: VertexSet,
    pub t: VertexSet,
    pub c: VertexSet,
    pub delta: f64,
    pub s: usize,
    pub k: usize,
    pub trace: Vec<TraceStep>,
    /// e(G[A_i]) >= d |A_i|^2 held at every step the loop visited
    pub density_ok_along_trace: bool,
    /// largest fingerprint-hit counter ever assigned (bounded by Delta + 1)
    pub max_t_value: u32,
}

/// Runs the container algorithm on a `P`-independent set S.
pub fn compute_container(
    g: &Graph,
    s_set: &VertexSet,
    p: &Pattern,
    params: &ContainerParams,
) -> Result<ContainerCertificate, ContainerError> {
    if contains_pattern_within(g, s_set.bits(), p).is_some() {
        return Err(ContainerError::NotIndependent);
    }
    let s = s_set.len();
    let delta = params.delta_for(g, s)?;

    let mut s_h = VertexSet::new(g.n());
    for v in s_set.iter() {
        if g.degree_in(v, s_set.bits()) as f64 >= delta {
            s_h.insert(v);
        }
    }

    let pos = ordering(g.n(), &params.pi)?;
    let run = run_loop(g, &s_h, params.r, params.d, delta, &pos, Branch::Membership(s_set));

    Ok(ContainerCertificate {
        s_h,
        t: run.t,
        c: run.c,
        delta,
        s,
        k: run.k,
        trace: run.trace,
        density_ok_along_trace: run.density_ok,
        max_t_value: run.max_t_value,
    })
}

/// Replays the loop from the fingerprint alone; the output C is bit-for-bit
/// the one `compute_container` produced for any S with this fingerprint.
pub fn reconstruct_container(
    g: &Graph,
    s_h: &VertexSet,
    t: &VertexSet,
    s: usize,
    params: &ContainerParams,
) -> Result<VertexSet, ContainerError> {
    let delta = params.delta_for(g, s)?;
    let pos = ordering(g.n(), &params.pi)?;
    if !t.bits().is_disjoint_from(s_h.bits()) {
        return Err(ContainerError::InconsistentFingerprint(
            "T intersects S_h".into(),
        ));
    }
    let run = run_loop(g, s_h, params.r, params.d, delta, &pos, Branch::Fingerprint(t));
    let consumed = VertexSet::from_indices(
        g.n(),
        run.trace.iter().filter(|st| st.in_s).map(|st| st.u as usize),
    );
    if consumed != *t {
        return Err(ContainerError::InconsistentFingerprint(format!(
            "replay consumed {:?} but the fingerprint was {:?}",
            consumed.to_sorted_vec(),
            t.to_sorted_vec()
        )));
    }
    Ok(run.c)
}

fn ordering(n: usize, pi: &Option<Vec<usize>>) -> Result<Vec<u32>, ContainerError> {
    match pi {
        None => Ok((0..n as u32).collect()),
        Some(p) => {
            if p.len() != n {
                return Err(ContainerError::BadOrdering);
            }
            let mut pos = vec![u32::MAX; n];
            for (rank, &v) in p.iter().enumerate() {
                if v >= n || pos[v] != u32::MAX {
                    return Err(ContainerError::BadOrdering);
                }
                pos[v] = rank as u32;
            }
            Ok(pos)
        }
    }
}

enum Branch<'a> {
    /// compute mode: branch on membership in S
    Membership(&'a VertexSet),
    /// replay mode: branch on membership in T
    Fingerprint(&'a VertexSet),
}

struct LoopRun {
    t: VertexSet,
    c: VertexSet,
    k: usize,
    trace: Vec<TraceStep>,
    max_t_value: u32,
    density_ok: bool,
}

fn run_loop(
    g: &Graph,
    s_h: &VertexSet,
    r: f64,
    d: f64,
    delta: f64,
    pos: &[u32],
    branch: Branch<'_>,
) -> LoopRun {
    let n = g.n();
    let mut arena = Bitset::full(n);
    arena.subtract(s_h.bits());
    let mut t_set = VertexSet::new(n);
    let mut counters = vec![0u32; n];
    let mut trace = Vec::new();
    let mut max_t_value = 0u32;
    let mut density_ok = true;
    let mut i = 0usize;
    loop {
        let size = arena.count();
        if (size as f64) <= r {
            break;
        }
        if density_ok && (g.edges_within(&arena) as f64) < d * (size * size) as f64 {
            density_ok = false;
        }
        // max-degree vertex of G[A], ties to the pi-earliest
        let mut u = usize::MAX;
        let mut best_deg = 0usize;
        for v in arena.iter() {
            let deg = g.degree_in(v, &arena);
            if u == usize::MAX || deg > best_deg || (deg == best_deg && pos[v] < pos[u]) {
                u = v;
                best_deg = deg;
            }
        }
        let in_s = match &branch {
            Branch::Membership(s) => s.contains(u),
            Branch::Fingerprint(t) => t.contains(u),
        };
        trace.push(TraceStep { i: i as u32, u: u as u32, in_s });
        if in_s {
            t_set.insert(u);
            let mut hit = g.neighbors(u).clone();
            hit.intersect_with(&arena);
            arena.remove(u);
            for v in hit.iter() {
                counters[v] += 1;
                max_t_value = max_t_value.max(counters[v]);
                if counters[v] as f64 > delta {
                    arena.remove(v);
                }
            }
        } else {
            arena.remove(u);
        }
        i += 1;
    }
    LoopRun {
        t: t_set,
        c: VertexSet::from_bitset(arena),
        k: i,
        trace,
        max_t_value,
        density_ok,
    }
}

/// Mechanical check of the certificate properties, with the admissible bound
/// substituted for the Turan number, plus the loop invariants.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateCheck {
    pub coverage: bool,
    pub s_h_bound: bool,
    pub t_bound: bool,
    pub c_bound: bool,
    pub sizes_strictly_decreasing: bool,
    pub t_counter_bound: bool,
    pub pass: bool,
}

pub fn verify_certificate(
    g: &Graph,
    s_set: &VertexSet,
    cert: &ContainerCertificate,
    params: &ContainerParams,
) -> CertificateCheck {
    let n = g.n() as f64;
    let ex_s = params.ex.eval(cert.s) as f64;
    let root = (ex_s * n.ln() / params.d).sqrt();

    let sh_t_in_s = cert.s_h.is_subset_of(s_set) && cert.t.is_subset_of(s_set);
    let mut rest = s_set.clone();
    for v in cert.s_h.iter().chain(cert.t.iter()) {
        rest.remove(v);
    }
    let coverage = sh_t_in_s && rest.is_subset_of(&cert.c);

    let s_h_bound = cert.s_h.len() as f64 <= 2.0 * root;
    let t_bound = cert.t.len() as f64 <= 32.0 * root;
    let c_bound = cert.c.len() as f64 <= params.r;

    let sizes = replay_sizes(g, cert);
    let sizes_strictly_decreasing = sizes.windows(2).all(|w| w[1] < w[0]);
    let t_counter_bound = (cert.max_t_value as f64) <= cert.delta + 1.0;

    let pass = coverage
        && s_h_bound
        && t_bound
        && c_bound
        && sizes_strictly_decreasing
        && t_counter_bound;
    CertificateCheck {
        coverage,
        s_h_bound,
        t_bound,
        c_bound,
        sizes_strictly_decreasing,
        t_counter_bound,
        pass,
    }
}

/// Arena sizes |A_0|, |A_1|, ..., |A_K| recomputed from the trace.
fn replay_sizes(g: &Graph, cert: &ContainerCertificate) -> Vec<usize> {
    let n = g.n();
    let mut arena = Bitset::full(n);
    arena.subtract(cert.s_h.bits());
    let mut counters = vec![0u32; n];
    let mut sizes = vec![arena.count()];
    for st in &cert.trace {
        let u = st.u as usize;
        if st.in_s {
            let mut hit = g.neighbors(u).clone();
            hit.intersect_with(&arena);
            arena.remove(u);
            for v in hit.iter() {
                counters[v] += 1;
                if counters[v] as f64 > cert.delta {
                    arena.remove(v);
                }
            }
        } else {
            arena.remove(u);
        }
        sizes.push(arena.count());
    }
    sizes
}

#[cfg(test)]
mod tests;
