//! Two-qubit gate layouts for one Markov step.
//!
//! 1D and 2D layouts are periodic. The 1D brickwork alternates even bonds
//! `(2i, 2i+1)` and odd bonds `(2i+1, 2i+2 mod n)` by step parity. The 2D
//! layout on a `side x side` torus (qubit `r*side + c`) cycles through four
//! layers: horizontal bonds starting at even columns, vertical bonds starting
//! at even rows, horizontal at odd columns, vertical at odd rows. The
//! nonlocal layout draws a fresh uniformly random perfect matching per step.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::below;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Architecture {
    #[serde(rename = "1d")]
    OneD,
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "nl")]
    NonLocal,
}

impl Architecture {
    pub fn tag(self) -> &'static str {
        match self {
            Architecture::OneD => "1d",
            Architecture::TwoD => "2d",
            Architecture::NonLocal => "nl",
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Architecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1d" => Ok(Architecture::OneD),
            "2d" => Ok(Architecture::TwoD),
            "nl" | "nonlocal" => Ok(Architecture::NonLocal),
            other => Err(Error::InvalidArgument(format!("unknown architecture '{other}'"))),
        }
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: usize) -> Option<usize> {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchitectureSchedule {
    kind: Architecture,
    n: usize,
    side: usize,
    /// Fixed layers for local layouts; empty for nonlocal.
    layers: Vec<Vec<(usize, usize)>>,
}

impl ArchitectureSchedule {
    pub fn new(kind: Architecture, n: usize) -> Result<Self> {
        let side = match kind {
            Architecture::OneD | Architecture::NonLocal => {
                if n < 2 || !n.is_multiple_of(2) {
                    return Err(Error::Config(format!(
                        "{kind} layout needs an even qubit count >= 2, got {n}"
                    )));
                }
                0
            }
            Architecture::TwoD => match exact_sqrt(n) {
                Some(side) if side >= 2 && side % 2 == 0 => side,
                _ => {
                    return Err(Error::Config(format!(
                        "2d layout needs n = side^2 with even side >= 2, got {n}"
                    )))
                }
            },
        };
        let layers = match kind {
            Architecture::OneD => vec![
                (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect(),
                (0..n / 2).map(|i| (2 * i + 1, (2 * i + 2) % n)).collect(),
            ],
            Architecture::TwoD => {
                let at = |r: usize, c: usize| (r % side) * side + (c % side);
                let horizontal = |offset: usize| {
                    (0..side)
                        .flat_map(|r| (0..side / 2).map(move |k| (r, 2 * k + offset)))
                        .map(|(r, c)| (at(r, c), at(r, c + 1)))
                        .collect::<Vec<_>>()
                };
                let vertical = |offset: usize| {
                    (0..side / 2)
                        .flat_map(|k| (0..side).map(move |c| (2 * k + offset, c)))
                        .map(|(r, c)| (at(r, c), at(r + 1, c)))
                        .collect::<Vec<_>>()
                };
                vec![horizontal(0), vertical(0), horizontal(1), vertical(1)]
            }
            Architecture::NonLocal => Vec::new(),
        };
        Ok(Self { kind, n, side, layers })
    }

    pub fn one_d(n: usize) -> Result<Self> {
        Self::new(Architecture::OneD, n)
    }

    pub fn two_d(side: usize) -> Result<Self> {
        Self::new(Architecture::TwoD, side * side)
    }

    pub fn nonlocal(n: usize) -> Result<Self> {
        Self::new(Architecture::NonLocal, n)
    }

    pub fn kind(&self) -> Architecture {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lattice side for 2D layouts, `None` otherwise.
    pub fn side(&self) -> Option<usize> {
        (self.kind == Architecture::TwoD).then_some(self.side)
    }

    /// Pairs for Markov step `step`, written into `scratch` for the nonlocal
    /// layout. Local layouts never touch `rng`.
    pub fn pairs_for_step<'a, R: RngCore + ?Sized>(
        &'a self,
        step: usize,
        rng: &mut R,
        scratch: &'a mut Vec<(usize, usize)>,
    ) -> &'a [(usize, usize)] {
        if self.kind == Architecture::NonLocal {
            random_matching(self.n, rng, scratch);
            scratch
        } else {
            &self.layers[step % self.layers.len()]
        }
    }

    pub fn layer_pairs<R: RngCore + ?Sized>(&self, step: usize, rng: &mut R) -> Vec<(usize, usize)> {
        let mut scratch = Vec::new();
        self.pairs_for_step(step, rng, &mut scratch).to_vec()
    }
}

/// Fisher-Yates shuffle of `0..n`, then consecutive entries are paired.
fn random_matching<R: RngCore + ?Sized>(n: usize, rng: &mut R, out: &mut Vec<(usize, usize)>) {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = below(rng, i + 1);
        perm.swap(i, j);
    }
    out.clear();
    out.extend(perm.chunks_exact(2).map(|c| (c[0], c[1])));
}

pub fn is_perfect_matching(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    for &(a, b) in pairs {
        if a == b || a >= n || b >= n || seen[a] || seen[b] {
            return false;
        }
        seen[a] = true;
        seen[b] = true;
    }
    seen.iter().all(|&s| s)
}
