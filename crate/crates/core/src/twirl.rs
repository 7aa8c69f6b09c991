//! Haar twirling of two-qubit channels.
//!
//! Averaging `U† M(U X U†) U` over Haar-random `U ∈ U(4)` leaves a two-qubit
//! depolarizing channel `X ↦ λ X + (1 - λ) tr(X) I/4`. The strength follows
//! from the Kraus operators alone, `λ = (Σ_k |tr A_k|² - 1) / 15`; the Monte
//! Carlo oracle here estimates it independently by sampling unitaries.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng;

pub type Mat4 = Matrix4<Complex64>;

/// Completeness tolerance for `Σ A†A = I`.
pub const COMPLETENESS_TOLERANCE: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `[I, X, Y, Z]`.
pub fn paulis() -> [Matrix2<Complex64>; 4] {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

/// Two-qubit Pauli products `σ_a ⊗ σ_b`, index `4a + b`; index 0 is identity.
pub fn pauli_basis() -> Vec<Mat4> {
    let p = paulis();
    let mut out = Vec::with_capacity(16);
    for a in &p {
        for b in &p {
            out.push(a.kronecker(b));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    ops: Vec<Mat4>,
}

impl KrausSet {
    pub fn new(ops: Vec<Mat4>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidArgument("empty Kraus set".into()));
        }
        let set = Self { ops };
        let residual = set.completeness_residual();
        if residual > COMPLETENESS_TOLERANCE {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(set)
    }

    pub fn ops(&self) -> &[Mat4] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `max |Σ A†A - I|` over matrix entries.
    pub fn completeness_residual(&self) -> f64 {
        let sum: Mat4 = self.ops.iter().map(|a| a.adjoint() * a).sum();
        (sum - Mat4::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, rho: &Mat4) -> Mat4 {
        self.ops.iter().map(|a| a * rho * a.adjoint()).sum()
    }

    /// Kraus set of `X ↦ U† M(U X U†) U`.
    pub fn conjugated(&self, u: &Mat4) -> Self {
        let ud = u.adjoint();
        Self { ops: self.ops.iter().map(|a| ud * a * u).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwirlMethod {
    Analytic,
    HaarMc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwirlResult {
    pub lambda: f64,
    pub method: TwirlMethod,
    /// Standard error of a single Pauli-probe estimate (Haar MC only, else 0).
    pub stderr: f64,
    /// Largest `|λ_P - λ|` over the 15 traceless Pauli probes (Haar MC only).
    pub max_deviation: f64,
    pub samples: usize,
}

pub fn lambda_from_kraus(k: &KrausSet) -> TwirlResult {
    let weight: f64 = k.ops.iter().map(|a| a.trace().norm_sqr()).sum();
    TwirlResult {
        lambda: (weight - 1.0) / 15.0,
        method: TwirlMethod::Analytic,
        stderr: 0.0,
        max_deviation: 0.0,
        samples: 0,
    }
}

/// Haar-random element of U(4): QR of a complex Ginibre matrix, with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: RngCore + ?Sized>(rng: &mut R) -> Mat4 {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut normal = || -> f64 { StandardNormal.sample(&mut *rng) };
    let g = Mat4::from_fn(|_, _| c(normal() * scale, normal() * scale));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..4 {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..4 {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Monte Carlo estimate of the twirled strength.
///
/// For each sampled unitary the conjugated channel is applied to every
/// traceless Pauli product `P`, giving probes `λ_P = tr(P · U†M(UPU†)U) / 4`.
/// The Haar average of each probe is `λ`; the returned value is the mean over
/// probes and samples, `stderr` the largest single-probe standard error, and
/// `max_deviation` the spread of the probe means.
pub fn haar_twirl_oracle(k: &KrausSet, samples: usize, seed: u64) -> Result<TwirlResult> {
    if samples == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let basis = pauli_basis();
    let probes: Vec<[f64; 15]> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, i);
            let u = haar_unitary(&mut rng);
            let twirled = k.conjugated(&u);
            let mut out = [0.0; 15];
            for (slot, p) in out.iter_mut().zip(&basis[1..]) {
                *slot = (p * twirled.apply(p)).trace().re / 4.0;
            }
            out
        })
        .collect();

    let n = samples as f64;
    let mut means = [0.0; 15];
    for row in &probes {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n);
    let mut stderr: f64 = 0.0;
    for (j, mean) in means.iter().enumerate() {
        let ss: f64 = probes.iter().map(|row| (row[j] - mean).powi(2)).sum();
        let var = if samples > 1 { ss / (n - 1.0) } else { 0.0 };
        stderr = stderr.max((var / n).sqrt());
    }
    let lambda = means.iter().sum::<f64>() / 15.0;
    let max_deviation = means.iter().map(|m| (m - lambda).abs()).fold(0.0, f64::max);
    Ok(TwirlResult { lambda, method: TwirlMethod::HaarMc, stderr, max_deviation, samples })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelTag {
    Identity,
    Depolarize2,
    TraceQubit1,
    TraceQubit2,
}

impl ChannelTag {
    pub const ALL: [ChannelTag; 4] =
        [ChannelTag::Identity, ChannelTag::Depolarize2, ChannelTag::TraceQubit1, ChannelTag::TraceQubit2];

    pub fn name(self) -> &'static str {
        match self {
            ChannelTag::Identity => "identity",
            ChannelTag::Depolarize2 => "depolarize2",
            ChannelTag::TraceQubit1 => "trace_qubit1",
            ChannelTag::TraceQubit2 => "trace_qubit2",
        }
    }
}

impl fmt::Display for ChannelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        ChannelTag::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown channel '{s}'")))
    }
}

/// Kraus realizations of the three twirl cases: nothing happens, both qubits
/// are replaced by `I/4`, or one qubit is traced out and replaced by `I/2`
/// (qubit 1 is the left tensor factor).
pub fn builtin_channel(tag: ChannelTag) -> KrausSet {
    let p = paulis();
    let half = c(0.5, 0.0);
    let quarter = c(0.25, 0.0);
    let id2 = Matrix2::<Complex64>::identity();
    let ops: Vec<Mat4> = match tag {
        ChannelTag::Identity => vec![Mat4::identity()],
        ChannelTag::Depolarize2 => pauli_basis().into_iter().map(|m| m * quarter).collect(),
        ChannelTag::TraceQubit1 => p.iter().map(|s| s.kronecker(&id2) * half).collect(),
        ChannelTag::TraceQubit2 => p.iter().map(|s| id2.kronecker(s) * half).collect(),
    };
    KrausSet::new(ops).expect("builtin channels are trace preserving")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(i: usize, j: usize) -> Mat4 {
        let mut m = Mat4::zeros();
        m[(i, j)] = c(1.0, 0.0);
        m
    }

    /// `I/2 ⊗ tr_1(ρ)`, computed entrywise.
    fn replace_first(rho: &Mat4) -> Mat4 {
        let mut reduced = Matrix2::<Complex64>::zeros();
        for b in 0..2 {
            for d in 0..2 {
                reduced[(b, d)] = rho[(b, d)] + rho[(2 + b, 2 + d)];
            }
        }
        (Matrix2::<Complex64>::identity() * c(0.5, 0.0)).kronecker(&reduced)
    }

    #[test]
    fn analytic_lambdas() {
        let lam = |t| lambda_from_kraus(&builtin_channel(t)).lambda;
        assert_eq!(lam(ChannelTag::Identity), 1.0);
        assert!(lam(ChannelTag::Depolarize2).abs() < 1e-12);
        assert!((lam(ChannelTag::TraceQubit1) - 0.2).abs() < 1e-12);
        assert!((lam(ChannelTag::TraceQubit2) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn builtin_sizes_and_completeness() {
        assert_eq!(builtin_channel(ChannelTag::Identity).len(), 1);
        assert_eq!(builtin_channel(ChannelTag::Depolarize2).len(), 16);
        assert_eq!(builtin_channel(ChannelTag::TraceQubit1).len(), 4);
        for t in ChannelTag::ALL {
            assert!(builtin_channel(t).completeness_residual() <= COMPLETENESS_TOLERANCE);
        }
    }

    #[test]
    fn trace_qubit1_replaces_first_qubit() {
        let ch = builtin_channel(ChannelTag::TraceQubit1);
        for i in 0..4 {
            for j in 0..4 {
                let rho = unit(i, j);
                let diff = ch.apply(&rho) - replace_first(&rho);
                assert!(diff.iter().all(|z| z.norm() < 1e-12), "basis ({i},{j})");
            }
        }
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let err = KrausSet::new(vec![Mat4::identity() * c(0.5, 0.0)]);
        assert!(matches!(err, Err(Error::NotTracePreserving { .. })));
    }

    #[test]
    fn unknown_tag() {
        assert!("bogus".parse::<ChannelTag>().is_err());
        assert_eq!("trace-qubit1".parse::<ChannelTag>().unwrap(), ChannelTag::TraceQubit1);
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut r = rng::stream(0, 0);
        for _ in 0..20 {
            let u = haar_unitary(&mut r);
            let err = (u.adjoint() * u - Mat4::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn haar_first_moment() {
        // E|U_00|^2 = 1/4, Var |U_00|^2 = 1/(4*5) - 1/16 = 3/80
        let mut r = rng::stream(42, 0);
        let n = 20_000;
        let mean = (0..n).map(|_| haar_unitary(&mut r)[(0, 0)].norm_sqr()).sum::<f64>() / n as f64;
        let se = (3.0f64 / 80.0 / n as f64).sqrt();
        assert!((mean - 0.25).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn identity_oracle_is_exact() {
        let r = haar_twirl_oracle(&builtin_channel(ChannelTag::Identity), 500, 3).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-12);
        assert!(r.stderr < 1e-12);
    }

    #[test]
    fn lambda_invariant_under_fixed_conjugation() {
        let mut r = rng::stream(8, 8);
        for t in ChannelTag::ALL {
            let ch = builtin_channel(t);
            let base = lambda_from_kraus(&ch).lambda;
            for _ in 0..5 {
                let u = haar_unitary(&mut r);
                assert!((lambda_from_kraus(&ch.conjugated(&u)).lambda - base).abs() < 1e-12);
            }
        }
    }
}
