//! Error-rate budgeting for routed QAOA circuits.
//!
//! After routing a nonlocal cost graph onto local hardware every QAOA layer
//! costs about `3n` gate layers in 1D and `√(7n)` in 2D. With the default of
//! ten QAOA layers this gives the circuit depth at which the forward model is
//! inverted for the noise rate that leaves a target fraction depolarized.

use serde::Serialize;

use crate::analytics::{formula_q, scaling_regime, RegimeLabel};
use crate::chain::{estimate_q, McConfig, NoiseParams};
use crate::error::{Error, Result};
use crate::maxcut::{classical_superiority_threshold, GraphClass, CUBIC_CLASSICAL_RATIO};
use crate::schedule::{Architecture, ArchitectureSchedule};

pub const DEFAULT_QAOA_LAYERS: usize = 10;
pub const P_MIN: f64 = 1e-12;
pub const P_MAX: f64 = 0.5;
/// Absolute tolerance on the depolarized fraction for the closed-form inversion.
pub const HEURISTIC_TOLERANCE: f64 = 1e-3;
/// Largest depth searched by [`max_useful_depth`].
pub const MAX_SEARCH_DEPTH: usize = 1_000_000;

const MC_MAX_ITERATIONS: usize = 60;

fn ceil_even(x: f64) -> usize {
    let c = x.ceil() as usize;
    c + c % 2
}

fn local_only(arch: Architecture) -> Result<()> {
    if arch == Architecture::NonLocal {
        return Err(Error::InvalidArgument("planning is defined for 1d and 2d layouts only".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthModel {
    pub arch: Architecture,
    pub qaoa_layers: usize,
}

impl DepthModel {
    pub fn new(arch: Architecture, qaoa_layers: usize) -> Result<Self> {
        local_only(arch)?;
        if qaoa_layers == 0 {
            return Err(Error::InvalidArgument("need at least one QAOA layer".into()));
        }
        Ok(Self { arch, qaoa_layers })
    }

    /// Routed depth, rounded up to the next even integer.
    pub fn depth(&self, n: usize) -> Result<usize> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 qubits, got {n}")));
        }
        let layers = self.qaoa_layers as f64;
        let n = n as f64;
        Ok(match self.arch {
            Architecture::OneD => ceil_even(layers * 3.0 * n),
            Architecture::TwoD => ceil_even(layers * (7.0 * n).sqrt()),
            Architecture::NonLocal => unreachable!(),
        })
    }
}

pub fn routed_depth(arch: Architecture, n: usize, qaoa_layers: usize) -> Result<usize> {
    DepthModel::new(arch, qaoa_layers)?.depth(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlanMethod {
    Heuristic,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlanMetadata {
    pub regime: RegimeLabel,
    pub iterations: usize,
    /// Forward model re-evaluated at the returned rate.
    pub achieved_q_frac: f64,
    /// Monte Carlo standard error of `achieved_q_frac` (0 for closed form).
    pub achieved_stderr: f64,
    pub qaoa_layers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlanResult {
    pub n: usize,
    pub arch: Architecture,
    pub depth: usize,
    pub target_q_frac: f64,
    pub required_p: f64,
    pub method: PlanMethod,
    pub metadata: PlanMetadata,
}

/// Noise rate at which the routed circuit of `DEFAULT_QAOA_LAYERS` layers
/// ends with a fraction `target_q_frac` depolarized.
pub fn required_error_rate(arch: Architecture, n: usize, target_q_frac: f64, method: PlanMethod) -> Result<PlanResult> {
    let depth = routed_depth(arch, n, DEFAULT_QAOA_LAYERS)?;
    required_error_rate_at_depth(arch, n, depth, target_q_frac, method)
}

/// As [`required_error_rate`] for an explicit (even) depth.
pub fn required_error_rate_at_depth(
    arch: Architecture,
    n: usize,
    depth: usize,
    target_q_frac: f64,
    method: PlanMethod,
) -> Result<PlanResult> {
    local_only(arch)?;
    if !(target_q_frac > 0.0 && target_q_frac < 1.0) {
        return Err(Error::InvalidArgument(format!("target fraction {target_q_frac} outside (0, 1)")));
    }
    if !depth.is_multiple_of(2) {
        return Err(Error::Config(format!("circuit depth must be even, got {depth}")));
    }
    let forward: Box<dyn Fn(f64) -> Result<(f64, f64)>> = match method {
        PlanMethod::Heuristic => {
            Box::new(move |p| Ok((formula_q(arch, n, depth as f64, p).expect("local layout"), 0.0)))
        }
        PlanMethod::MonteCarlo { samples, seed } => {
            let schedule = ArchitectureSchedule::new(arch, n)?;
            let config = McConfig::new(samples, seed, depth)?;
            Box::new(move |p| {
                let est = estimate_q(&schedule, &NoiseParams::new(p)?, &config);
                Ok((est.q_frac, est.stderr))
            })
        }
    };

    let (f_lo, _) = forward(P_MIN)?;
    let (f_hi, _) = forward(P_MAX)?;
    if !(f_lo <= target_q_frac && target_q_frac <= f_hi) {
        return Err(Error::Diagnostic(format!(
            "target {target_q_frac} not bracketed: q({P_MIN:e}) = {f_lo}, q({P_MAX}) = {f_hi}"
        )));
    }

    // bisection on log p
    let (mut lo, mut hi) = (P_MIN.ln(), P_MAX.ln());
    let mut best = (f64::INFINITY, P_MIN, f_lo, 0.0);
    let mut iterations = 0;
    let max_iterations = match method {
        PlanMethod::Heuristic => 200,
        PlanMethod::MonteCarlo { .. } => MC_MAX_ITERATIONS,
    };
    while iterations < max_iterations {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let p = mid.exp();
        let (q, se) = forward(p)?;
        let miss = (q - target_q_frac).abs();
        if miss < best.0 {
            best = (miss, p, q, se);
        }
        let done = match method {
            PlanMethod::Heuristic => hi - lo < 1e-14,
            PlanMethod::MonteCarlo { .. } => miss <= se,
        };
        if done {
            break;
        }
        if q < target_q_frac {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (miss, p, q, se) = best;
    let tolerance = match method {
        PlanMethod::Heuristic => HEURISTIC_TOLERANCE,
        PlanMethod::MonteCarlo { .. } => se.max(HEURISTIC_TOLERANCE),
    };
    if miss > tolerance {
        return Err(Error::Diagnostic(format!(
            "bisection ended {miss:e} away from target {target_q_frac} after {iterations} iterations"
        )));
    }
    Ok(PlanResult {
        n,
        arch,
        depth,
        target_q_frac,
        required_p: p,
        method,
        metadata: PlanMetadata {
            regime: scaling_regime(arch, n, depth as f64),
            iterations,
            achieved_q_frac: q,
            achieved_stderr: se,
            qaoa_layers: DEFAULT_QAOA_LAYERS,
        },
    })
}

/// Smallest even depth at which the closed-form depolarized fraction
/// exceeds `q_threshold`.
pub fn depth_to_exceed(arch: Architecture, n: usize, p: f64, q_threshold: f64) -> Result<usize> {
    local_only(arch)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!("noise probability {p} outside (0, 1)")));
    }
    let exceeds = |d: usize| formula_q(arch, n, d as f64, p).expect("local layout") > q_threshold;
    let mut hi = 2;
    while !exceeds(hi) {
        hi *= 2;
        if hi > MAX_SEARCH_DEPTH {
            return Err(Error::Diagnostic(format!(
                "fraction {q_threshold} not exceeded for any depth <= {MAX_SEARCH_DEPTH}"
            )));
        }
    }
    // invariant: !exceeds(lo) (or lo = 0), exceeds(hi), both even
    let mut lo = 0;
    while hi - lo > 2 {
        let mid = (lo + hi) / 4 * 2;
        if exceeds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Depth beyond which a classical algorithm certifiably beats the averaged
/// noisy output on the given graph class.
pub fn max_useful_depth(arch: Architecture, n: usize, p: f64, class: GraphClass) -> Result<usize> {
    depth_to_exceed(arch, n, p, classical_superiority_threshold(class, CUBIC_CLASSICAL_RATIO)?)
}
