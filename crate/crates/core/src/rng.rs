//! Deterministic per-trajectory random streams.
//!
//! Every trajectory `i` of a run with master seed `s` draws from its own
//! ChaCha8 stream seeded with
//!
//! ```text
//! stream_seed(s, i) = mix64(s ^ mix64(i + 0x9E3779B97F4A7C15))
//! mix64(z)          = SplitMix64 finalizer:
//!                       z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!                       z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!                       z ^ (z >> 31)
//! ```
//!
//! (all arithmetic wrapping mod 2^64), expanded to a 256-bit key with
//! `ChaCha8Rng::seed_from_u64`. Streams therefore depend only on
//! `(s, i)` and never on scheduling, so aggregates are identical for any
//! thread count.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream_seed(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed ^ mix64(index.wrapping_add(GOLDEN_GAMMA)))
}

pub fn stream(master_seed: u64, index: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(stream_seed(master_seed, index))
}

/// Uniform draw in (0, 1], 53 bits.
#[inline]
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform index in `0..bound` by Lemire's widening multiply (bias < 2^-64 * bound).
#[inline]
pub fn below<R: RngCore + ?Sized>(rng: &mut R, bound: usize) -> usize {
    ((rng.next_u64() as u128 * bound as u128) >> 64) as usize
}

/// Iterates the positions `0..len` selected independently with probability
/// `prob`, using geometric gaps. The number of draws consumed depends only on
/// the stream, never on what the caller does with the positions.
pub struct BernoulliPositions<'a, R: RngCore + ?Sized> {
    rng: &'a mut R,
    log_keep: f64,
    next: usize,
    len: usize,
    all: bool,
}

impl<'a, R: RngCore + ?Sized> BernoulliPositions<'a, R> {
    pub fn new(rng: &'a mut R, prob: f64, len: usize) -> Self {
        let all = prob >= 1.0;
        let log_keep = if prob <= 0.0 { 0.0 } else { (-prob).ln_1p() };
        let mut it = Self { rng, log_keep, next: 0, len, all };
        if prob <= 0.0 {
            it.next = len;
        } else if !all {
            it.next = it.gap();
        }
        it
    }

    #[inline]
    fn gap(&mut self) -> usize {
        let g = open_unit(self.rng).ln() / self.log_keep;
        if g >= self.len as f64 {
            self.len
        } else {
            g as usize
        }
    }
}

impl<R: RngCore + ?Sized> Iterator for BernoulliPositions<'_, R> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.next >= self.len {
            return None;
        }
        let pos = self.next;
        let step = if self.all { 0 } else { self.gap() };
        self.next = pos.saturating_add(1).saturating_add(step);
        Some(pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_by_index_and_master() {
        assert_ne!(stream_seed(1, 0), stream_seed(1, 1));
        assert_ne!(stream_seed(1, 0), stream_seed(2, 0));
        assert_eq!(stream_seed(7, 42), stream_seed(7, 42));
    }

    #[test]
    fn mix64_reference_value() {
        // SplitMix64 first output for state 0 is mix64(GOLDEN_GAMMA).
        assert_eq!(mix64(GOLDEN_GAMMA), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn bernoulli_positions_edge_probabilities() {
        let mut rng = stream(0, 0);
        assert_eq!(BernoulliPositions::new(&mut rng, 0.0, 10).count(), 0);
        let all: Vec<_> = BernoulliPositions::new(&mut rng, 1.0, 10).collect();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn bernoulli_positions_rate() {
        let mut rng = stream(3, 9);
        let len = 200_000;
        let hits = BernoulliPositions::new(&mut rng, 0.19, len).count() as f64;
        let sigma = (len as f64 * 0.19 * 0.81).sqrt();
        assert!((hits - 0.19 * len as f64).abs() < 4.0 * sigma);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = stream(5, 5);
        for bound in 1..50 {
            for _ in 0..100 {
                assert!(below(&mut rng, bound) < bound);
            }
        }
    }
}
