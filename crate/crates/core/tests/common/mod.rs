//! Reference implementations used to cross-check the library. Nothing here
//! calls into the simulation code it is compared against.
#![allow(dead_code)]

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Brickwork pairs for a periodic chain, built from scratch: even steps pair
/// (0,1),(2,3),..., odd steps pair (1,2),...,(n-1,0).
pub fn brickwork_pairs(n: usize, step: usize) -> Vec<(usize, usize)> {
    let offset = step % 2;
    (0..n / 2).map(|k| ((2 * k + offset) % n, (2 * k + offset + 1) % n)).collect()
}

/// Exact distribution over all 2^n error patterns (bit i of the index is qubit
/// i) after the initial layer and `steps` propagate-then-noise steps.
pub fn dense_distribution(n: usize, p: f64, steps: usize) -> Vec<f64> {
    let size = 1usize << n;
    let mut dist: Vec<f64> = (0..size)
        .map(|s| {
            let ones = (s as u64).count_ones() as i32;
            p.powi(ones) * (1.0 - p).powi(n as i32 - ones)
        })
        .collect();
    let flip = 2.0 * p - p * p;
    for step in 0..steps {
        for (a, b) in brickwork_pairs(n, step) {
            let mut next = vec![0.0; size];
            let (ma, mb) = (1usize << a, 1usize << b);
            for (s, &w) in dist.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                if (s & ma == 0) == (s & mb == 0) {
                    next[s] += w;
                } else {
                    next[s | ma | mb] += 0.8 * w;
                    next[s & !(ma | mb)] += 0.2 * w;
                }
            }
            dist = next;
        }
        for q in 0..n {
            let m = 1usize << q;
            let mut next = dist.clone();
            for s in 0..size {
                if s & m == 0 {
                    next[s | m] += flip * dist[s];
                    next[s] -= flip * dist[s];
                }
            }
            dist = next;
        }
    }
    dist
}

/// Pearson chi-square goodness of fit. Cells whose expected count is below 5
/// are pooled into one cell. Returns (statistic, degrees of freedom, p-value).
pub fn chi_square(observed: &[u64], probs: &[f64]) -> (f64, usize, f64) {
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (&o, &pr) in observed.iter().zip(probs) {
        let e = pr * total;
        if e < 5.0 {
            pooled_obs += o as f64;
            pooled_exp += e;
        } else {
            stat += (o as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        cells += 1;
    }
    let dof = cells.saturating_sub(1).max(1);
    let p_value = 1.0 - ChiSquared::new(dof as f64).unwrap().cdf(stat);
    (stat, dof, p_value)
}

/// Probability of dying out (absorption at 0) starting from a single error, by iterating
/// the ones-chain transition rule until the mass settles.
pub fn ones_chain_absorption_by_iteration(n: usize) -> f64 {
    let mut mass = vec![0.0; n + 1];
    mass[1] = 1.0;
    for _ in 0..2_000_000 {
        let mut next = vec![0.0; n + 1];
        next[0] = mass[0];
        next[n] = mass[n];
        for x in 1..n {
            let w = mass[x];
            if x == 1 {
                next[0] += 0.2 * w;
                next[2] += 0.8 * w;
            } else if x == n - 1 {
                next[n - 2] += 0.2 * w;
                next[n] += 0.8 * w;
            } else {
                next[x - 2] += w / 25.0;
                next[x] += 8.0 * w / 25.0;
                next[x + 2] += 16.0 * w / 25.0;
            }
        }
        mass = next;
        if mass[1..n].iter().sum::<f64>() < 1e-15 {
            break;
        }
    }
    mass[0]
}

/// Least-squares slope of `ys` against `1..=len`.
pub fn slope(ys: &[f64]) -> f64 {
    let m = ys.len() as f64;
    let xbar = (m + 1.0) / 2.0;
    let ybar = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = (i + 1) as f64 - xbar;
        sxy += dx * (y - ybar);
        sxx += dx * dx;
    }
    sxy / sxx
}
