//! Closed-form and semi-analytic depolarization estimates.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schedule::Architecture;

/// 1D light-cone saturation: `D ≤ (5/3) n` is shallow.
pub const ONE_D_SATURATION: f64 = 5.0 / 3.0;
/// 2D fitted saturation: `D ≤ 3.226 √n` is shallow.
pub const TWO_D_SATURATION: f64 = 3.226;
/// Nonlocal shallow cutoff `D ≤ κ log2 n`. The scaling is only known up to a
/// constant; this κ is a labelling convention.
pub const NONLOCAL_LOG_FACTOR: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeLabel {
    Shallow,
    Deep,
}

/// `1 - base^exponent` with `base` clamped to `[0, 1]` and `0^0 = 1`.
fn one_minus_pow(base: f64, exponent: f64) -> f64 {
    let base = base.clamp(0.0, 1.0);
    let exponent = exponent.max(0.0);
    if exponent == 0.0 {
        return 0.0;
    }
    1.0 - base.powf(exponent)
}

/// Heuristic exponent of `(1 - 2p)` for the 1D brickwork.
pub fn heuristic_exponent_1d(n: f64, depth: f64) -> f64 {
    if depth <= ONE_D_SATURATION * n {
        9.0 / 80.0 * depth * depth
    } else {
        3.0 / 8.0 * n * depth - 5.0 / 16.0 * n * n
    }
}

/// Heuristic 1D fraction of depolarized qubits.
pub fn heuristic_q_1d(n: usize, depth: f64, p: f64) -> f64 {
    one_minus_pow(1.0 - 2.0 * p, heuristic_exponent_1d(n as f64, depth))
}

/// Fitted exponent of `(1 - 3p/2)` for the 2D lattice.
pub fn empirical_exponent_2d(n: f64, depth: f64) -> f64 {
    if depth <= TWO_D_SATURATION * n.sqrt() {
        0.026 * depth.powi(3) + 0.054 * depth * depth
    } else {
        0.5 * n * depth - 0.74 * n.powf(1.5) + 0.56 * n
    }
}

/// Semi-empirical 2D fraction of depolarized qubits. `n` need not be a
/// perfect square here; only `√n` enters.
pub fn empirical_q_2d(n: usize, depth: f64, p: f64) -> f64 {
    one_minus_pow(1.0 - 1.5 * p, empirical_exponent_2d(n as f64, depth))
}

/// Closed-form prediction for local layouts; `None` for nonlocal.
pub fn formula_q(arch: Architecture, n: usize, depth: f64, p: f64) -> Option<f64> {
    match arch {
        Architecture::OneD => Some(heuristic_q_1d(n, depth, p)),
        Architecture::TwoD => Some(empirical_q_2d(n, depth, p)),
        Architecture::NonLocal => None,
    }
}

/// Fraction depolarized by local noise alone (no gates): `1 - (1 - p)^D`.
pub fn local_noise_only_q(depth: f64, p: f64) -> f64 {
    one_minus_pow(1.0 - p, depth)
}

/// Space-time area of the mean single-error cone after `steps` Markov steps:
/// the integral of `(3/4) min(6t/5, n)`.
pub fn cone_area(n: usize, steps: f64) -> f64 {
    let n = n as f64;
    if steps <= 5.0 / 6.0 * n {
        9.0 / 20.0 * steps * steps
    } else {
        3.0 / 4.0 * n * steps - 5.0 / 16.0 * n * n
    }
}

/// Transition probabilities of the ones chain (length of a contiguous
/// depolarized segment seeded by one error) on `{0, ..., n}`.
pub fn ones_chain_transitions(n: usize, x: usize) -> Vec<(usize, f64)> {
    const GROW: f64 = 16.0 / 25.0;
    const SHRINK: f64 = 1.0 / 25.0;
    const STAY: f64 = 8.0 / 25.0;
    match x {
        0 => vec![(0, 1.0)],
        x if x == n => vec![(n, 1.0)],
        1 => vec![(0, 0.2), (2, 0.8)],
        x if x == n - 1 => vec![(n - 2, 0.2), (n, 0.8)],
        x => vec![(x - 2, SHRINK), (x, STAY), (x + 2, GROW)],
    }
}

/// Probability that the ones chain started at 1 is eventually absorbed at 0,
/// from the linear system `h = P h` on transient states with `h(0) = 1`,
/// `h(n) = 0`.
pub fn ones_chain_absorption(n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("ones chain needs n >= 4, got {n}")));
    }
    // unknowns h(1..=n-1), index x-1
    let m = n - 1;
    let mut a = DMatrix::<f64>::identity(m, m);
    let mut rhs = DVector::<f64>::zeros(m);
    for x in 1..n {
        for (y, prob) in ones_chain_transitions(n, x) {
            if y == 0 {
                rhs[x - 1] += prob;
            } else if y < n {
                a[(x - 1, y - 1)] -= prob;
            }
        }
    }
    let h = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Diagnostic("singular absorbing-chain system".into()))?;
    Ok(h[0])
}

/// Mean growth of the segment length per step away from the edges,
/// `2 (16/25) - 2 (1/25)`.
pub fn ones_chain_drift() -> f64 {
    2.0 * (16.0 / 25.0) - 2.0 * (1.0 / 25.0)
}

/// Mean displacement of one segment end per step (`+3/5` outward).
pub fn endpoint_drift() -> f64 {
    0.8 - 0.2
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RigorousBoundParams {
    c: f64,
}

impl RigorousBoundParams {
    /// Confidence constant `0 < c < 3/4`.
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 0.75) {
            return Err(Error::InvalidArgument(format!("confidence constant {c} outside (0, 3/4)")));
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `ln(1 / (1 - sqrt(1/4 + c)))`, positive for admissible `c`.
    fn log_term(&self) -> f64 {
        -(1.0 - (0.25 + self.c).sqrt()).ln()
    }
}

/// Area of the space-time region whose single errors reach a fixed qubit with
/// probability at least `c`, after `t` Markov steps, clamped at 0.
pub fn certified_area(t: f64, params: &RigorousBoundParams) -> f64 {
    let area = 0.6 * t * t - 4.0 / 3.0 * (2.0 * params.log_term()).sqrt() * t.powf(1.5);
    area.max(0.0)
}

/// Rigorous lower bound on the 1D depolarized fraction, valid for `D < n`.
pub fn rigorous_lower_bound_1d(n: usize, depth: f64, p: f64, params: &RigorousBoundParams) -> Result<f64> {
    if depth >= n as f64 {
        return Err(Error::Scope(format!("rigorous 1D bound needs D < n (D = {depth}, n = {n})")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("noise probability {p} outside [0, 1]")));
    }
    let area = certified_area(depth / 2.0, params);
    let flip = p * (2.0 - p);
    Ok(params.c * one_minus_pow(1.0 - flip, area))
}

/// Depth at which a single error's light cone spans the whole register.
pub fn saturation_depth(arch: Architecture, n: usize) -> f64 {
    let n = n as f64;
    match arch {
        Architecture::OneD => ONE_D_SATURATION * n,
        Architecture::TwoD => TWO_D_SATURATION * n.sqrt(),
        Architecture::NonLocal => NONLOCAL_LOG_FACTOR * n.log2(),
    }
}

/// Shallow iff `D` is at most the saturation depth.
pub fn scaling_regime(arch: Architecture, n: usize, depth: f64) -> RegimeLabel {
    if depth <= saturation_depth(arch, n) {
        RegimeLabel::Shallow
    } else {
        RegimeLabel::Deep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn heuristic_1d_values() {
        assert_eq!(heuristic_q_1d(100, 0.0, 1e-3), 0.0);
        // 1 - 0.998^(9/80 * 10^4) = 1 - 0.998^1125
        let shallow = 1.0 - 0.998f64.powf(1125.0);
        assert_relative_eq!(heuristic_q_1d(100, 100.0, 1e-3), shallow, max_relative = 1e-12);
        assert!((shallow - 0.8948).abs() < 5e-5);
        // deep: 3/8*100*200 - 5/16*10^4 = 7500 - 3125 = 4375
        let deep = 1.0 - 0.998f64.powf(4375.0);
        assert_relative_eq!(heuristic_q_1d(100, 200.0, 1e-3), deep, max_relative = 1e-12);
        assert!((deep - 0.99984).abs() < 1e-5);
    }

    #[test]
    fn empirical_2d_values() {
        assert_eq!(empirical_q_2d(900, 0.0, 1e-3), 0.0);
        let v = empirical_q_2d(900, 20.0, 1e-3);
        assert!((v - 0.2915).abs() < 1e-4, "{v}");
        let expect = 1.0 - 0.9985f64.powf(2000.0 - 740.0 + 56.0);
        assert_relative_eq!(empirical_q_2d(100, 40.0, 1e-3), expect, max_relative = 1e-12);
    }

    #[test]
    fn large_p_saturates() {
        assert_eq!(heuristic_q_1d(10, 4.0, 0.7), 1.0);
        assert_eq!(empirical_q_2d(16, 4.0, 0.9), 1.0);
    }

    #[test]
    fn cone_area_values_and_continuity() {
        assert_eq!(cone_area(100, 0.0), 0.0);
        assert_relative_eq!(cone_area(100, 10.0), 45.0);
        let n = 12.0;
        let boundary = 10.0;
        assert_relative_eq!(9.0 / 20.0 * boundary * boundary, 45.0);
        assert_relative_eq!(0.75 * n * boundary - 5.0 / 16.0 * n * n, 45.0);
        assert_relative_eq!(cone_area(12, 10.0), 45.0);
        assert_relative_eq!(cone_area(12, 10.0 + 1e-9), 45.0, max_relative = 1e-8);
    }

    #[test]
    fn cone_area_matches_heuristic_exponent() {
        // p_M ≈ 2p and D_M = D/2 turn (1 - p_M)^A into (1 - 2p)^(heuristic exponent)
        for &(n, d) in &[(100usize, 60.0), (100, 300.0), (30, 90.0)] {
            assert_relative_eq!(
                cone_area(n, d / 2.0),
                heuristic_exponent_1d(n as f64, d),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn drifts() {
        assert_relative_eq!(ones_chain_drift(), 1.2, epsilon = 1e-15);
        assert_relative_eq!(endpoint_drift(), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn ones_chain_rows_are_stochastic() {
        for n in 4..20 {
            for x in 0..=n {
                let s: f64 = ones_chain_transitions(n, x).iter().map(|t| t.1).sum();
                assert_relative_eq!(s, 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn absorption_bracket() {
        for n in 4..=60 {
            let h = ones_chain_absorption(n).unwrap();
            assert!((0.2..=0.25).contains(&h), "n={n}: {h}");
        }
        assert!(ones_chain_absorption(3).is_err());
    }

    #[test]
    fn rigorous_bound_edges() {
        let params = RigorousBoundParams::new(0.5).unwrap();
        assert_eq!(rigorous_lower_bound_1d(200, 20.0, 1e-2, &params).unwrap(), 0.0);
        assert!(matches!(rigorous_lower_bound_1d(100, 100.0, 1e-2, &params), Err(Error::Scope(_))));
        assert!(RigorousBoundParams::new(0.75).is_err());
        assert!(RigorousBoundParams::new(0.0).is_err());
        let mut prev = 0.0;
        for d in (0..200).step_by(2) {
            let b = rigorous_lower_bound_1d(200, d as f64, 1e-2, &params).unwrap();
            assert!(b >= prev && b <= 0.5);
            prev = b;
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(scaling_regime(Architecture::OneD, 100, 100.0), RegimeLabel::Shallow);
        assert_eq!(scaling_regime(Architecture::OneD, 100, 200.0), RegimeLabel::Deep);
        assert_eq!(scaling_regime(Architecture::TwoD, 900, 97.0), RegimeLabel::Deep);
        assert_eq!(scaling_regime(Architecture::TwoD, 900, 96.0), RegimeLabel::Shallow);
        assert_eq!(scaling_regime(Architecture::NonLocal, 1024, 20.0), RegimeLabel::Shallow);
        assert_eq!(scaling_regime(Architecture::NonLocal, 1024, 21.0), RegimeLabel::Deep);
    }
}
