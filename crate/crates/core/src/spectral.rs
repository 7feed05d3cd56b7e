//! Eigenvalue computation and local-density certificates.
//!
//! Two independent routes compute the extreme adjacency eigenvalues: a dense
//! symmetric eigensolver (the oracle, used for n <= 2000) and a power
//! iteration with Hotelling deflation (the scalable route, with a certified
//! residual). `lambda` is the largest absolute nontrivial eigenvalue
//! `max(|mu_2|, |mu_n|)` — for a d-regular graph this is the spectral gap
//! datum that converts into local edge density through the mixing bound
//! `e(A) >= d|A|^2/(2n) - lambda |A|/2`.

use crate::bitset::Bitset;
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::rng::SplitMix64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("graph is empty (no vertices)")]
    EmptyGraph,
    #[error("power iteration failed to certify residual {residual:.3e} < {tol:.3e} within {iters} iterations")]
    NonConvergence { residual: f64, tol: f64, iters: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectralMethod {
    Dense,
    Iterative,
}

/// Default tolerance for the dense route.
pub const DENSE_TOL: f64 = 1e-9;
/// Default tolerance for the iterative route.
pub const ITERATIVE_TOL: f64 = 1e-6;
/// Iteration cap per eigenvalue.
pub const MAX_ITERS: usize = 100_000;

/// (n, d, lambda) data for a graph, with the regularity flag and the method
/// that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralCertificate {
    pub n: usize,
    /// regular degree, or the maximum degree when `regular` is false
    pub d: usize,
    pub regular: bool,
    pub mu1: f64,
    pub lambda: f64,
    pub tolerance: f64,
    pub method: SpectralMethod,
}

/// Largest eigenvalue and largest absolute nontrivial eigenvalue.
/// Dense solver for n <= 2000, power iteration beyond.
pub fn extreme_eigenvalues(g: &Graph, tol: f64) -> Result<(f64, f64), SpectralError> {
    if g.n() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if g.n() <= 2000 {
        Ok(dense_extreme_eigenvalues(g))
    } else {
        iterative_extreme_eigenvalues(g, tol, MAX_ITERS)
    }
}

pub fn spectral_certificate(g: &Graph, tol: f64) -> Result<SpectralCertificate, SpectralError> {
    let (mu1, lambda) = extreme_eigenvalues(g, tol)?;
    let degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let d = degs.iter().copied().max().unwrap_or(0);
    let regular = degs.iter().all(|&x| x == d);
    let method = if g.n() <= 2000 { SpectralMethod::Dense } else { SpectralMethod::Iterative };
    let cert = SpectralCertificate { n: g.n(), d, regular, mu1, lambda, tolerance: tol, method };
    debug_assert!(cert.lambda >= -tol && cert.lambda <= cert.d as f64 + tol);
    debug_assert!(!cert.regular || (cert.mu1 - cert.d as f64).abs() <= tol.max(1e-7));
    Ok(cert)
}

/// Dense symmetric eigensolve (the oracle route).
pub fn dense_extreme_eigenvalues(g: &Graph) -> (f64, f64) {
    let n = g.n();
    let m = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i != j && g.has_edge(i, j) {
            1.0
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mu1 = ev[0];
    let lambda = if n >= 2 {
        ev[1].abs().max(ev[n - 1].abs())
    } else {
        0.0
    };
    (mu1, lambda)
}

/// Power iteration route: mu_1 from the diagonally shifted matrix A + cI
/// (c = max degree, making the dominant eigenvalue nonnegative-definite and
/// unique to the top of the spectrum), mu_2 by deflating the computed
/// eigenvector, mu_n from cI - A. Residuals are certified per eigenpair.
pub fn iterative_extreme_eigenvalues(
    g: &Graph,
    tol: f64,
    max_iters: usize,
) -> Result<(f64, f64), SpectralError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if n == 1 || g.edge_count() == 0 {
        return Ok((0.0, 0.0));
    }
    let c = g.max_degree() as f64;

    // mu1
    let (rho1, v1) = power_iterate(g, c, false, None, tol, max_iters)?;
    let mu1 = rho1 - c;
    // mu2: deflate v1 out of A + cI
    let (rho2, _) = power_iterate(g, c, false, Some(&v1), tol, max_iters)?;
    let mu2 = rho2 - c;
    // mu_n: dominant of cI - A is c - mu_n
    let (rho_n, _) = power_iterate(g, c, true, None, tol, max_iters)?;
    let mun = c - rho_n;

    Ok((mu1, mu2.abs().max(mun.abs())))
}

/// Power iteration on `A + cI` (or `cI - A` when `negate`), optionally
/// deflating a known eigenvector. Returns the converged Rayleigh quotient of
/// the *shifted* operator and the eigenvector.
fn power_iterate(
    g: &Graph,
    c: f64,
    negate: bool,
    deflate: Option<&[f64]>,
    tol: f64,
    max_iters: usize,
) -> Result<(f64, Vec<f64>), SpectralError> {
    let n = g.n();
    let mut v = seeded_unit_vector(n);
    if let Some(w) = deflate {
        orthogonalize(&mut v, w);
        normalize(&mut v);
    }
    let mut mv = vec![0.0; n];
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    for it in 0..max_iters {
        shifted_matvec(g, c, negate, &v, &mut mv);
        if let Some(w) = deflate {
            orthogonalize(&mut mv, w);
        }
        rho = dot(&v, &mv);
        residual = (0..n)
            .map(|i| (mv[i] - rho * v[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < tol {
            return Ok((rho, v));
        }
        let norm = dot(&mv, &mv).sqrt();
        if norm == 0.0 {
            // landed exactly in the kernel: eigenvalue 0 with residual 0
            return Ok((0.0, v));
        }
        for i in 0..n {
            v[i] = mv[i] / norm;
        }
        if let Some(w) = deflate {
            if it % 16 == 0 {
                orthogonalize(&mut v, w);
                normalize(&mut v);
            }
        }
    }
    Err(SpectralError::NonConvergence {
        residual,
        tol,
        iters: max_iters,
    })
}

fn shifted_matvec(g: &Graph, c: f64, negate: bool, x: &[f64], out: &mut [f64]) {
    for u in 0..g.n() {
        let mut acc = 0.0;
        for v in g.neighbors(u).iter() {
            acc += x[v];
        }
        out[u] = if negate { c * x[u] - acc } else { acc + c * x[u] };
    }
}

fn seeded_unit_vector(n: usize) -> Vec<f64> {
    let mut rng = SplitMix64::new(0x5EED_E16E);
    let mut v: Vec<f64> = (0..n)
        .map(|_| (rng.next_u64() as f64) / u64::MAX as f64 - 0.5)
        .collect();
    normalize(&mut v);
    v
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

fn orthogonalize(v: &mut [f64], against: &[f64]) {
    let p = dot(v, against);
    for i in 0..v.len() {
        v[i] -= p * against[i];
    }
}

// ----------------------------------------------------------------------------
// Mixing-lemma edge bound and local-density verification
// ----------------------------------------------------------------------------

/// Lower bound `max(0, d a^2 / (2n) - lambda a / 2)` on the edges spanned by
/// any `a`-subset of an (n, d, lambda)-graph.
pub fn eml_edge_lower_bound(n: usize, d: f64, lambda: f64, a: usize) -> f64 {
    let a = a as f64;
    (d * a * a / (2.0 * n as f64) - lambda * a / 2.0).max(0.0)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DensityError {
    #[error("exhaustive subset scan needs n <= {max}, got n = {n}")]
    ExhaustiveInfeasible { n: usize, max: usize },
}

pub const EXHAUSTIVE_MAX_N: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DensityMode {
    Exhaustive,
    Sampled,
}

/// Flat record of a local-density check: does `e(G[A]) >= |A|^2 delta n^-beta`
/// hold for every checked `A` with `|A| > max(gamma n^theta, 1)`?
///
/// Singletons are never checked: they span no edges, and the density
/// hypothesis is only ever invoked on sets large enough to carry pairs.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub delta: f64,
    pub beta: f64,
    pub theta: f64,
    pub gamma: f64,
    pub mode: DensityMode,
    pub samples: u64,
    pub checked: u64,
    pub violation_count: u64,
    /// first witnesses, capped at 20 entries
    pub violations: Vec<Vec<usize>>,
    pub pass: bool,
}

const MAX_RECORDED_WITNESSES: usize = 20;

#[allow(clippy::too_many_arguments)]
pub fn verify_local_density(
    g: &Graph,
    delta: f64,
    beta: f64,
    theta: f64,
    gamma: f64,
    mode: DensityMode,
    samples: u64,
    seed: u64,
) -> Result<DensityReport, DensityError> {
    verify_local_density_exec(g, delta, beta, theta, gamma, mode, samples, seed, Exec::Auto)
}

#[allow(clippy::too_many_arguments)]
pub fn verify_local_density_exec(
    g: &Graph,
    delta: f64,
    beta: f64,
    theta: f64,
    gamma: f64,
    mode: DensityMode,
    samples: u64,
    seed: u64,
    exec: Exec,
) -> Result<DensityReport, DensityError> {
    let n = g.n();
    let nf = n as f64;
    let size_threshold = (gamma * nf.powf(theta)).max(1.0);
    let required = |a: usize| (a * a) as f64 * delta * nf.powf(-beta);

    let (checked, violation_count, violations) = match mode {
        DensityMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(DensityError::ExhaustiveInfeasible { n, max: EXHAUSTIVE_MAX_N });
            }
            let esub = subset_edge_table(g);
            let mut checked = 0u64;
            let mut count = 0u64;
            let mut wit: Vec<Vec<usize>> = Vec::new();
            for mask in 0u32..(1u32 << n) {
                let a = mask.count_ones() as usize;
                if (a as f64) <= size_threshold {
                    continue;
                }
                checked += 1;
                if (esub[mask as usize] as f64) < required(a) {
                    count += 1;
                    if wit.len() < MAX_RECORDED_WITNESSES {
                        wit.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
                    }
                }
            }
            (checked, count, wit)
        }
        DensityMode::Sampled => {
            let lo = size_threshold.floor() as usize + 1;
            if lo > n {
                (0, 0, Vec::new())
            } else {
                let span = (n - lo + 1) as u64;
                let results = exec::map_collect(exec, samples as usize, |i| {
                    let mut rng = SplitMix64::stream(seed, i as u64);
                    let a = lo + rng.uniform(span) as usize;
                    let set = rng.subset(n, a);
                    let bits = Bitset::from_indices(n, set.iter().copied());
                    ((g.edges_within(&bits) as f64) < required(a)).then_some(set)
                });
                let mut count = 0u64;
                let mut wit = Vec::new();
                for r in results.into_iter().flatten() {
                    count += 1;
                    if wit.len() < MAX_RECORDED_WITNESSES {
                        wit.push(r);
                    }
                }
                (samples, count, wit)
            }
        }
    };

    Ok(DensityReport {
        n,
        delta,
        beta,
        theta,
        gamma,
        mode,
        samples: if mode == DensityMode::Sampled { samples } else { 0 },
        checked,
        violation_count,
        violations,
        pass: violation_count == 0,
    })
}

/// Edge counts of all induced subsets via the peel-lowest-bit recurrence
/// e(A) = e(A - v) + deg_{A - v}(v).
fn subset_edge_table(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            let mut row = 0u32;
            for w in g.neighbors(v).iter() {
                row |= 1 << w;
            }
            row
        })
        .collect();
    let mut table = vec![0u32; 1usize << n];
    for mask in 1u32..(1u32 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        table[mask as usize] = table[rest as usize] + (rows[v] & rest).count_ones();
    }
    table
}
