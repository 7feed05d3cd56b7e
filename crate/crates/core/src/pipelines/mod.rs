//! End-to-end experiment procedures: sparsify-and-delete, the unital overlay
//! pipeline, random Turan experiments, and the log-domain count bounds.

mod bounds;
mod exponents;
mod overlay_pipeline;
mod sparsify;
mod turan_experiment;

pub use bounds::{
    c4_first_moment_log, c4_graph_count_log_bound, C4CountingParams, BoundError, FirstMomentReport,
};
pub use exponents::{
    exponent_fit, exponent_targets, ExponentError, ExponentResult, ExponentTarget, FitError,
    FitResult,
};
pub use overlay_pipeline::{
    overlay_sparsify_pipeline, DetectionMode, OverlayPipelineConfig, OverlayPipelineReport,
};
pub use sparsify::{
    sparsify_delete, verify_alpha_upper, AlphaVerdict, AlphaVerifyMode, SparsifyReport,
};
pub use turan_experiment::{random_turan_experiment, TrialResult, TuranExperimentReport};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("need 0 <= alpha < 1, got {0}")]
    BadAlpha(f64),
    #[error("need beta > 0, got {0}")]
    BadBeta(f64),
    #[error("need 0 < theta < 1, got {0}")]
    BadTheta(f64),
    #[error("constraint beta < theta (1 - alpha) violated: {beta} >= {rhs}")]
    ConstraintViolated { beta: f64, rhs: f64 },
    #[error("need n >= 3, got {0}")]
    HostTooSmall(u64),
    #[error("sampling constant c must be positive, got {0}")]
    BadC(f64),
    #[error("derived p = {0} exceeds 1 (n too small for this c)")]
    ProbabilityOverflow(f64),
    #[error("preset needs t >= 3, got {0}")]
    BadPresetT(u32),
}

/// Exponent presets for the host families, as exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostPreset {
    /// triangle-free hosts: beta = 1/3, theta = 2/3
    K3,
    /// K4-free hosts: beta = 1/4, theta = 1/2
    K4,
    /// K_t-free pseudorandom hosts: beta = 1/(2t-3), theta = 1/2 + 1/(4t-6)
    Kt(u32),
}

impl HostPreset {
    pub fn beta_theta(self) -> Result<(Ratio<i64>, Ratio<i64>), ParamsError> {
        match self {
            HostPreset::K3 => Ok((Ratio::new(1, 3), Ratio::new(2, 3))),
            HostPreset::K4 => Ok((Ratio::new(1, 4), Ratio::new(1, 2))),
            HostPreset::Kt(t) => {
                if t < 3 {
                    return Err(ParamsError::BadPresetT(t));
                }
                let t = t as i64;
                Ok((
                    Ratio::new(1, 2 * t - 3),
                    Ratio::new(1, 2) + Ratio::new(1, 4 * t - 6),
                ))
            }
        }
    }
}

/// Derived sparsification parameters. `m` is defined as `p*n/2`, which makes
/// the identity `p*n = 2m` hold bit-exactly in floating point while agreeing
/// with `c*s*n^{1-theta}` algebraically.
#[derive(Clone, Debug, Serialize)]
pub struct SparsifyParams {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    /// density-hypothesis knobs, carried along for report context
    pub gamma: f64,
    pub delta: f64,
    pub c: f64,
    pub n: u64,
    /// s = ceil(n^{beta/(1-alpha)} (ln n)^{3/(1-alpha)})
    pub s: u64,
    /// p = 2 c s / n^theta
    pub p: f64,
    /// m = p n / 2 = c s n^{1-theta}
    pub m: f64,
    pub seed: u64,
}

/// Validates the exponent constraints and derives (s, p, m). Natural logs.
#[allow(clippy::too_many_arguments)]
pub fn sparsify_params(
    alpha: f64,
    beta: f64,
    theta: f64,
    gamma: f64,
    delta: f64,
    n: u64,
    c: f64,
    seed: u64,
) -> Result<SparsifyParams, ParamsError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(ParamsError::BadAlpha(alpha));
    }
    if !(beta > 0.0) {
        return Err(ParamsError::BadBeta(beta));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(ParamsError::BadTheta(theta));
    }
    let rhs = theta * (1.0 - alpha);
    if beta >= rhs {
        return Err(ParamsError::ConstraintViolated { beta, rhs });
    }
    if n < 3 {
        return Err(ParamsError::HostTooSmall(n));
    }
    if !(c > 0.0) {
        return Err(ParamsError::BadC(c));
    }
    let nf = n as f64;
    let s = (nf.powf(beta / (1.0 - alpha)) * nf.ln().powf(3.0 / (1.0 - alpha))).ceil();
    let p = 2.0 * c * s / nf.powf(theta);
    if p > 1.0 {
        return Err(ParamsError::ProbabilityOverflow(p));
    }
    Ok(SparsifyParams {
        alpha,
        beta,
        theta,
        gamma,
        delta,
        c,
        n,
        s: s as u64,
        p,
        m: p * nf / 2.0,
        seed,
    })
}

/// Preset-driven variant.
pub fn sparsify_params_preset(
    alpha: f64,
    preset: HostPreset,
    gamma: f64,
    delta: f64,
    n: u64,
    c: f64,
    seed: u64,
) -> Result<SparsifyParams, ParamsError> {
    let (beta, theta) = preset.beta_theta()?;
    let to_f = |r: Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
    sparsify_params(alpha, to_f(beta), to_f(theta), gamma, delta, n, c, seed)
}
