//! Sampling the classical Markov chain obtained by Haar-averaging a noisy
//! entangle/uncompute circuit.
//!
//! One Markov step accounts for a mirrored pair of circuit layers: the gate
//! layer's propagation kernel acts first, then the two noise layers that
//! sandwich it, which together flip each clean qubit with probability
//! `2p - p^2`. A trajectory starts from an independent Bernoulli(`p`) layer
//! and runs `depth / 2` steps.

use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{self, BernoulliPositions};
use crate::schedule::ArchitectureSchedule;
use crate::state::{ErrorState, QubitMask};

/// A mismatched pair heals to (0,0) when a uniform `u64` draw is below this,
/// i.e. with probability 1/5; otherwise both qubits end up depolarized.
const HEAL_THRESHOLD: u64 = u64::MAX / 5;

/// Probability that a pair with exactly one depolarized qubit ends with both
/// depolarized after twirling.
pub const PROPAGATION_PROBABILITY: f64 = 0.8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseParams {
    p: f64,
}

impl NoiseParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("noise probability {p} outside [0, 1]")));
        }
        Ok(Self { p })
    }

    /// Single-qubit depolarizing probability per layer.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Per-Markov-step flip probability `2p - p^2`.
    pub fn flip_probability(&self) -> f64 {
        self.p * (2.0 - self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McConfig {
    samples: usize,
    master_seed: u64,
    depth: usize,
    #[serde(skip)]
    threads: Option<usize>,
}

impl McConfig {
    pub fn new(samples: usize, master_seed: u64, depth: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Config("sample count must be positive".into()));
        }
        if !depth.is_multiple_of(2) {
            return Err(Error::Config(format!("circuit depth must be even, got {depth}")));
        }
        Ok(Self { samples, master_seed, depth, threads: None })
    }

    /// Caps the worker count. Results do not depend on it.
    pub fn with_threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads.filter(|&t| t > 0);
        self
    }

    pub fn with_depth(self, depth: usize) -> Result<Self> {
        Self::new(self.samples, self.master_seed, depth).map(|c| c.with_threads(self.threads))
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn markov_steps(&self) -> usize {
        self.depth / 2
    }

    pub fn threads(&self) -> Option<usize> {
        self.threads
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QEstimate {
    pub n: usize,
    pub samples: usize,
    /// Mean number of depolarized qubits.
    pub q_mean: f64,
    /// `q_mean / n`.
    pub q_frac: f64,
    /// Standard error of `q_frac`.
    pub stderr: f64,
}

/// Each qubit independently depolarized with probability `p`.
pub fn init_state<R: RngCore + ?Sized>(n: usize, p: f64, rng: &mut R) -> ErrorState {
    let mut state = ErrorState::clean(n);
    for i in BernoulliPositions::new(rng, p, n) {
        state.set(i);
    }
    state
}

/// Applies the twirled two-qubit kernel to every pair: (0,0) and (1,1) are
/// fixed; a mismatched pair becomes (1,1) with probability 4/5 and (0,0) with
/// probability 1/5. One draw is consumed per pair whatever the pair's state,
/// so two states driven by the same stream stay ordered.
pub fn propagate_layer<R: RngCore + ?Sized>(state: &mut ErrorState, pairs: &[(usize, usize)], rng: &mut R) {
    for &(a, b) in pairs {
        let heal = rng.next_u64() < HEAL_THRESHOLD;
        if state.get(a) != state.get(b) {
            if heal {
                state.clear(a);
                state.clear(b);
            } else {
                state.set(a);
                state.set(b);
            }
        }
    }
}

/// Flips each clean qubit with probability `2p - p^2`; depolarized qubits stay.
pub fn noise_layer<R: RngCore + ?Sized>(state: &mut ErrorState, params: &NoiseParams, rng: &mut R) {
    let n = state.len();
    for i in BernoulliPositions::new(rng, params.flip_probability(), n) {
        state.set(i);
    }
}

/// Runs `steps` Markov steps starting at step index 0.
pub fn evolve<R: RngCore + ?Sized>(
    state: &mut ErrorState,
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    steps: usize,
    rng: &mut R,
) {
    let mut scratch = Vec::new();
    for step in 0..steps {
        let pairs = schedule.pairs_for_step(step, rng, &mut scratch);
        propagate_layer(state, pairs, rng);
        noise_layer(state, params, rng);
    }
}

fn check_size(schedule: &ArchitectureSchedule, n: usize) -> Result<()> {
    if schedule.n() != n {
        return Err(Error::Config(format!(
            "schedule has {} qubits but the input has {n}",
            schedule.n()
        )));
    }
    Ok(())
}

/// Final error pattern of trajectory `index` under the stream
/// `rng::stream(config.master_seed(), index)`.
pub fn run_trajectory(
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    config: &McConfig,
    index: u64,
) -> ErrorState {
    let mut rng = rng::stream(config.master_seed(), index);
    let mut state = init_state(schedule.n(), params.p(), &mut rng);
    evolve(&mut state, schedule, params, config.markov_steps(), &mut rng);
    state
}

/// Runs `config.samples()` trajectories in parallel, maps each final state
/// with `map` and folds with the associative, commutative `reduce`.
pub fn map_reduce_trajectories<T, M, F>(
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    config: &McConfig,
    identity: T,
    map: M,
    reduce: F,
) -> T
where
    T: Clone + Send + Sync,
    M: Fn(u64, &ErrorState) -> T + Sync + Send,
    F: Fn(T, T) -> T + Sync + Send,
{
    let run = || {
        (0..config.samples() as u64)
            .into_par_iter()
            .map(|i| map(i, &run_trajectory(schedule, params, config, i)))
            .reduce(|| identity.clone(), &reduce)
    };
    in_pool(config.threads(), run)
}

pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build worker pool")
            .install(f),
        None => f(),
    }
}

/// Exact integer moments of the final depolarized count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountMoments {
    pub samples: u64,
    pub sum: u64,
    pub sum_sq: u128,
}

impl CountMoments {
    pub fn push(&mut self, q: usize) {
        self.samples += 1;
        self.sum += q as u64;
        self.sum_sq += (q as u128) * (q as u128);
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            samples: self.samples + other.samples,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn to_estimate(&self, n: usize) -> QEstimate {
        let s = self.samples as f64;
        let q_mean = self.sum as f64 / s;
        // samples * sum_sq - sum^2 >= 0 exactly (Cauchy-Schwarz on integers)
        let centered = self.samples as u128 * self.sum_sq - (self.sum as u128) * (self.sum as u128);
        let variance = centered as f64 / (s * s);
        QEstimate {
            n,
            samples: self.samples as usize,
            q_mean,
            q_frac: q_mean / n as f64,
            stderr: (variance / s).sqrt() / n as f64,
        }
    }
}

pub fn estimate_q(schedule: &ArchitectureSchedule, params: &NoiseParams, config: &McConfig) -> QEstimate {
    let moments = map_reduce_trajectories(
        schedule,
        params,
        config,
        CountMoments::default(),
        |_, s| {
            let mut m = CountMoments::default();
            m.push(s.count());
            m
        },
        CountMoments::merge,
    );
    moments.to_estimate(schedule.n())
}

/// Frequencies of "every qubit in the subset is clean" for several subsets,
/// all read from the same trajectories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanEvents {
    pub samples: u64,
    pub counts: Vec<u64>,
}

impl CleanEvents {
    pub fn probability(&self, i: usize) -> f64 {
        self.counts[i] as f64 / self.samples as f64
    }

    /// Binomial standard error of [`CleanEvents::probability`].
    pub fn stderr(&self, i: usize) -> f64 {
        let p = self.probability(i);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

pub fn estimate_clean_events(
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    config: &McConfig,
    subsets: &[Vec<usize>],
) -> Result<CleanEvents> {
    let n = schedule.n();
    if let Some(&q) = subsets.iter().flatten().find(|&&q| q >= n) {
        return Err(Error::InvalidArgument(format!("qubit {q} out of range for n = {n}")));
    }
    let masks: Vec<QubitMask> = subsets.iter().map(|s| QubitMask::new(n, s)).collect();
    let counts = map_reduce_trajectories(
        schedule,
        params,
        config,
        vec![0u64; masks.len()],
        |_, s| masks.iter().map(|m| u64::from(s.is_clean_on(m))).collect(),
        |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect(),
    );
    Ok(CleanEvents { samples: config.samples() as u64, counts })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Probability {
    pub value: f64,
    pub stderr: f64,
}

/// Clean-event probabilities for two disjoint subsets and their union.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointClean {
    pub a: Probability,
    pub b: Probability,
    pub union: Probability,
}

impl JointClean {
    /// `P(A ∪ B clean) - P(A clean) P(B clean)`.
    pub fn excess(&self) -> f64 {
        self.union.value - self.a.value * self.b.value
    }

    /// Standard error of [`JointClean::excess`], neglecting covariances.
    pub fn excess_stderr(&self) -> f64 {
        (self.union.stderr.powi(2)
            + (self.b.value * self.a.stderr).powi(2)
            + (self.a.value * self.b.stderr).powi(2))
        .sqrt()
    }
}

pub fn estimate_joint_clean(
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    config: &McConfig,
    a: &[usize],
    b: &[usize],
) -> Result<JointClean> {
    if let Some(q) = a.iter().find(|q| b.contains(q)) {
        return Err(Error::InvalidArgument(format!("subsets overlap at qubit {q}")));
    }
    let union: Vec<usize> = a.iter().chain(b).copied().collect();
    let ev = estimate_clean_events(schedule, params, config, &[a.to_vec(), b.to_vec(), union])?;
    let prob = |i| Probability { value: ev.probability(i), stderr: ev.stderr(i) };
    Ok(JointClean { a: prob(0), b: prob(1), union: prob(2) })
}

/// Mean depolarized count after each of `steps` Markov steps, starting every
/// trajectory from `initial` (no initial noise layer).
pub fn mean_spread_from(
    initial: &ErrorState,
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    steps: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Vec<f64>> {
    check_size(schedule, initial.len())?;
    if samples == 0 {
        return Err(Error::Config("sample count must be positive".into()));
    }
    let totals = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(master_seed, i);
            let mut state = initial.clone();
            let mut scratch = Vec::new();
            let mut counts = Vec::with_capacity(steps);
            for step in 0..steps {
                let pairs = schedule.pairs_for_step(step, &mut rng, &mut scratch);
                propagate_layer(&mut state, pairs, &mut rng);
                noise_layer(&mut state, params, &mut rng);
                counts.push(state.count() as u64);
            }
            counts
        })
        .reduce(|| vec![0u64; steps], |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect());
    Ok(totals.into_iter().map(|t| t as f64 / samples as f64).collect())
}
