//! Max-Cut instances and the solution-quality limits implied by a given
//! depolarized fraction.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{in_pool, run_trajectory, McConfig, NoiseParams};
use crate::error::{Error, Result};
use crate::schedule::ArchitectureSchedule;
use crate::state::ErrorState;

/// Best known worst-case ratio of a classical algorithm on cubic graphs.
pub const CUBIC_CLASSICAL_RATIO: f64 = 0.9326;
/// Goemans-Williamson guarantee.
pub const GOEMANS_WILLIAMSON_RATIO: f64 = 0.878;
/// Largest instance accepted by [`brute_force_maxcut`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Undirected graph with nonnegative weights, no self-loops, no parallel edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.u >= n_vertices || e.v >= n_vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) out of range for {n_vertices} vertices",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {}", e.u)));
            }
            if !(e.weight >= 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidArgument(format!("invalid weight {} on ({}, {})", e.weight, e.u, e.v)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({}, {})", e.u, e.v)));
            }
        }
        Ok(Self { n_vertices, edges })
    }

    pub fn unweighted(n_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n_vertices, pairs.iter().map(|&(u, v)| Edge { u, v, weight: 1.0 }).collect())
    }

    /// Unit-weight cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn ring(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("ring needs at least 3 vertices, got {n}")));
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unweighted(n, &pairs)
    }

    /// Edge-list text: one `i j [w]` per line, weight defaulting to 1.
    /// Blank lines and `#` comments are skipped. The vertex count is one more
    /// than the largest index mentioned.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut n = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(err(format!("expected 'i j [w]', got '{line}'")));
            }
            let index = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex index '{s}'")));
            let u = index(fields[0])?;
            let v = index(fields[1])?;
            let weight = match fields.get(2) {
                Some(w) => w.parse::<f64>().map_err(|_| err(format!("bad weight '{w}'")))?,
                None => 1.0,
            };
            if u == v {
                return Err(err(format!("self-loop at vertex {u}")));
            }
            if weight < 0.0 || !weight.is_finite() {
                return Err(err(format!("negative or non-finite weight {weight}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(err(format!("duplicate edge ({u}, {v})")));
            }
            n = n.max(u + 1).max(v + 1);
            edges.push(Edge { u, v, weight });
        }
        Self::new(n, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    Graph::parse(&std::fs::read_to_string(path)?)
}

/// A ±1 assignment with its cut value and cut edges (indices into `edges()`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutSolution {
    pub assignment: Vec<i8>,
    pub value: f64,
    pub cut_edges: Vec<usize>,
}

impl CutSolution {
    pub fn from_assignment(g: &Graph, assignment: Vec<i8>) -> Result<Self> {
        if assignment.len() != g.n_vertices() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} entries for {} vertices",
                assignment.len(),
                g.n_vertices()
            )));
        }
        if assignment.iter().any(|&z| z != 1 && z != -1) {
            return Err(Error::InvalidArgument("assignment entries must be ±1".into()));
        }
        let cut_edges: Vec<usize> =
            (0..g.edge_count()).filter(|&k| assignment[g.edges[k].u] != assignment[g.edges[k].v]).collect();
        let value = cut_value(g, &assignment);
        Ok(Self { assignment, value, cut_edges })
    }
}

/// `Σ a_ij (1 - Z_i Z_j) / 2`.
pub fn cut_value(g: &Graph, assignment: &[i8]) -> f64 {
    g.edges
        .iter()
        .map(|e| e.weight * (1.0 - f64::from(assignment[e.u] * assignment[e.v])) / 2.0)
        .sum()
}

/// Exhaustive search with vertex 0 fixed to +1. Vertex `i + 1` takes -1 when
/// bit `i` of the enumeration counter is set; the first maximizer found in
/// counter order wins ties.
pub fn brute_force_maxcut(g: &Graph) -> Result<CutSolution> {
    let n = g.n_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Scope(format!(
            "brute force limited to {BRUTE_FORCE_MAX_VERTICES} vertices, graph has {n}"
        )));
    }
    if n == 0 {
        return CutSolution::from_assignment(g, Vec::new());
    }
    let side = |mask: u64, v: usize| v > 0 && (mask >> (v - 1)) & 1 == 1;
    let (best_mask, _) = (0..1u64 << (n - 1))
        .into_par_iter()
        .map(|mask| {
            let value: f64 =
                g.edges.iter().filter(|e| side(mask, e.u) != side(mask, e.v)).map(|e| e.weight).sum();
            (mask, value)
        })
        .reduce(
            || (u64::MAX, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    let assignment = (0..n).map(|v| if side(best_mask, v) { -1 } else { 1 }).collect();
    CutSolution::from_assignment(g, assignment)
}

/// Expected cut of a uniformly random assignment: half the total weight.
pub fn cut_average(g: &Graph) -> f64 {
    g.total_weight() / 2.0
}

fn check_fraction(q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!("depolarized fraction {q} outside [0, 1]")));
    }
    Ok(())
}

/// Upper bound on the mean cut of the averaged noisy output when a fraction
/// `q` of the qubits is depolarized:
/// `(1/2)(1 - q)(2 - q) C_max + (1 - (1 - q)^2) C_avg`.
pub fn energy_upper_bound(c_max: f64, c_avg: f64, q_frac: f64) -> Result<f64> {
    check_fraction(q_frac)?;
    if c_avg > c_max {
        return Err(Error::InvalidArgument(format!("C_avg {c_avg} exceeds C_max {c_max}")));
    }
    let keep = 1.0 - q_frac;
    Ok(0.5 * keep * (2.0 - q_frac) * c_max + (1.0 - keep * keep) * c_avg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GraphClass {
    /// Unweighted graphs of maximum degree 3 (`C_max ≥ 2|E|/3`).
    #[serde(rename = "deg3")]
    Deg3,
    /// Unweighted bipartite graphs of maximum degree 3 (`C_max = |E|`).
    #[serde(rename = "bipartite-deg3")]
    BipartiteDeg3,
}

impl GraphClass {
    pub fn tag(self) -> &'static str {
        match self {
            GraphClass::Deg3 => "deg3",
            GraphClass::BipartiteDeg3 => "bipartite-deg3",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "deg3" => Ok(GraphClass::Deg3),
            "bipartite-deg3" => Ok(GraphClass::BipartiteDeg3),
            other => Err(Error::InvalidArgument(format!("unknown graph class '{other}'"))),
        }
    }
}

/// Upper bound on the approximation ratio at depolarized fraction `q`.
pub fn approx_ratio_bound(q_frac: f64, class: GraphClass) -> Result<f64> {
    check_fraction(q_frac)?;
    Ok(match class {
        GraphClass::Deg3 => 1.0 - (q_frac / 2.0).powi(2),
        GraphClass::BipartiteDeg3 => 1.0 - q_frac / 2.0,
    })
}

/// Depolarized fraction above which a classical algorithm with the given
/// ratio provably does better on average. Values above 1 mean the bound
/// never drops below the classical ratio.
pub fn classical_superiority_threshold(class: GraphClass, classical_ratio: f64) -> Result<f64> {
    if !(classical_ratio > 0.0 && classical_ratio < 1.0) {
        return Err(Error::InvalidArgument(format!("classical ratio {classical_ratio} outside (0, 1)")));
    }
    Ok(match class {
        GraphClass::Deg3 => 2.0 * (1.0 - classical_ratio).sqrt(),
        GraphClass::BipartiteDeg3 => 2.0 * (1.0 - classical_ratio),
    })
}

/// Mean cut when depolarized vertices are uniformly random: a clean cut edge
/// contributes `a_ij`, a clean uncut edge 0, any edge touching an error
/// `a_ij / 2`.
pub fn expected_cut_given_errors(g: &Graph, sol: &CutSolution, errors: &ErrorState) -> Result<f64> {
    if errors.len() != g.n_vertices() || sol.assignment.len() != g.n_vertices() {
        return Err(Error::InvalidArgument(format!(
            "error pattern has {} qubits, graph has {} vertices",
            errors.len(),
            g.n_vertices()
        )));
    }
    Ok(g.edges
        .iter()
        .map(|e| {
            if errors.get(e.u) || errors.get(e.v) {
                e.weight / 2.0
            } else if sol.assignment[e.u] != sol.assignment[e.v] {
                e.weight
            } else {
                0.0
            }
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AzumaBound {
    /// `min(raw, 1)`.
    pub value: f64,
    pub raw: f64,
    pub dimension: u32,
    /// True for `dimension = 2`, where the increment bound's constant is
    /// unknown and taken as 1.
    pub implicit_constant: bool,
}

/// Tail bound `P(|C - <C>| ≥ α|E|) ≤ 2 exp(-α²|E| / (2 Δ² D^(2k)))` for a
/// `k`-dimensional local layout.
pub fn azuma_bound(alpha: f64, edge_count: usize, max_degree: usize, depth: f64, dimension: u32) -> Result<AzumaBound> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1]")));
    }
    if !(dimension == 1 || dimension == 2) {
        return Err(Error::InvalidArgument(format!("dimension must be 1 or 2, got {dimension}")));
    }
    let delta = max_degree as f64;
    let denom = 2.0 * delta * delta * depth.powi(2 * dimension as i32);
    let raw = 2.0 * (-alpha * alpha * edge_count as f64 / denom).exp();
    Ok(AzumaBound { value: raw.min(1.0), raw, dimension, implicit_constant: dimension == 2 })
}

/// Per-trajectory cut values together with the depolarized fraction read
/// from the same trajectories.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutStatistics {
    pub samples: usize,
    pub mean: f64,
    pub stderr: f64,
    pub q_frac: f64,
    pub q_stderr: f64,
    #[serde(skip)]
    pub values: Vec<f64>,
}

impl CutStatistics {
    fn deviations(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.values.iter().map(|v| (v - self.mean).abs()).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    /// Empirical quantile of `|C - mean|` (nearest rank).
    pub fn deviation_quantile(&self, prob: f64) -> f64 {
        let d = self.deviations();
        let rank = ((prob.clamp(0.0, 1.0) * d.len() as f64).ceil() as usize).clamp(1, d.len());
        d[rank - 1]
    }

    /// Fraction of trajectories with `|C - mean| ≥ threshold`.
    pub fn tail_frequency(&self, threshold: f64) -> f64 {
        self.values.iter().filter(|v| (*v - self.mean).abs() >= threshold).count() as f64 / self.samples as f64
    }
}

pub fn empirical_cut_statistics(
    g: &Graph,
    sol: &CutSolution,
    schedule: &ArchitectureSchedule,
    params: &NoiseParams,
    config: &McConfig,
) -> Result<CutStatistics> {
    let n = g.n_vertices();
    if schedule.n() != n {
        return Err(Error::Config(format!("graph has {n} vertices but the schedule has {} qubits", schedule.n())));
    }
    let rows: Vec<(f64, usize)> = in_pool(config.threads(), || {
        (0..config.samples() as u64)
            .into_par_iter()
            .map(|i| {
                let errors = run_trajectory(schedule, params, config, i);
                let cut = expected_cut_given_errors(g, sol, &errors).expect("sizes checked");
                (cut, errors.count())
            })
            .collect()
    });
    let s = rows.len() as f64;
    let mean = rows.iter().map(|r| r.0).sum::<f64>() / s;
    let var = rows.iter().map(|r| (r.0 - mean).powi(2)).sum::<f64>() / s;
    let q_mean = rows.iter().map(|r| r.1 as f64).sum::<f64>() / s;
    let q_var = rows.iter().map(|r| (r.1 as f64 - q_mean).powi(2)).sum::<f64>() / s;
    Ok(CutStatistics {
        samples: rows.len(),
        mean,
        stderr: (var / s).sqrt(),
        q_frac: q_mean / n as f64,
        q_stderr: (q_var / s).sqrt() / n as f64,
        values: rows.into_iter().map(|r| r.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square() -> Graph {
        Graph::ring(4).unwrap()
    }

    #[test]
    fn parse_cycle_and_errors() {
        let g = Graph::parse("# 4-cycle\n0 1\n1 2\n2 3 1.0\n3 0\n\n").unwrap();
        assert_eq!((g.n_vertices(), g.edge_count(), g.max_degree()), (4, 4, 2));
        assert!(matches!(Graph::parse("0 1\n0 0 1.0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("0 1 -2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Graph::parse("0 1\n1 0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("0 x"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse("0 1 2 3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_maxcut(&square()).unwrap().value, 4.0);
        let tri = Graph::ring(3).unwrap();
        let sol = brute_force_maxcut(&tri).unwrap();
        assert_eq!(sol.value, 2.0);
        assert_eq!(sol.cut_edges.len(), 2);
        assert_eq!(sol.assignment[0], 1);
    }

    #[test]
    fn brute_force_rejects_large() {
        let g = Graph::ring(25).unwrap();
        assert!(matches!(brute_force_maxcut(&g), Err(Error::Scope(_))));
    }

    #[test]
    fn averages() {
        assert_eq!(cut_average(&square()), 2.0);
        assert_eq!(cut_average(&Graph::ring(3).unwrap()), 1.5);
        let single = Graph::new(2, vec![Edge { u: 0, v: 1, weight: 3.0 }]).unwrap();
        assert_eq!(cut_average(&single), 1.5);
    }

    #[test]
    fn energy_bound_values() {
        assert_eq!(energy_upper_bound(4.0, 2.0, 0.0).unwrap(), 4.0);
        assert_eq!(energy_upper_bound(4.0, 2.0, 1.0).unwrap(), 2.0);
        assert_relative_eq!(energy_upper_bound(4.0, 2.0, 0.5).unwrap(), 3.0);
        assert!(energy_upper_bound(1.0, 2.0, 0.5).is_err());
        assert!(energy_upper_bound(4.0, 2.0, 1.5).is_err());
    }

    #[test]
    fn ratio_bounds() {
        assert_eq!(approx_ratio_bound(0.0, GraphClass::Deg3).unwrap(), 1.0);
        assert_relative_eq!(approx_ratio_bound(0.52, GraphClass::Deg3).unwrap(), 0.9324, epsilon = 1e-12);
        assert_relative_eq!(approx_ratio_bound(1.0, GraphClass::Deg3).unwrap(), 0.75);
        assert_relative_eq!(approx_ratio_bound(0.2, GraphClass::BipartiteDeg3).unwrap(), 0.9);
    }

    #[test]
    fn thresholds() {
        let t = |c, r| classical_superiority_threshold(c, r).unwrap();
        assert_relative_eq!(t(GraphClass::Deg3, CUBIC_CLASSICAL_RATIO), 2.0 * 0.0674f64.sqrt(), epsilon = 1e-12);
        assert!((t(GraphClass::Deg3, CUBIC_CLASSICAL_RATIO) - 0.5192).abs() < 5e-5);
        assert!((t(GraphClass::BipartiteDeg3, CUBIC_CLASSICAL_RATIO) - 0.1348).abs() < 1e-12);
        assert!((t(GraphClass::Deg3, GOEMANS_WILLIAMSON_RATIO) - 0.6986).abs() < 5e-5);
        assert!(classical_superiority_threshold(GraphClass::Deg3, 1.0).is_err());
        // inverting gives back the classical ratio
        let q = t(GraphClass::Deg3, 0.95);
        assert_relative_eq!(approx_ratio_bound(q, GraphClass::Deg3).unwrap(), 0.95, epsilon = 1e-12);
    }

    #[test]
    fn conditional_cut() {
        let g = square();
        let sol = brute_force_maxcut(&g).unwrap();
        assert_eq!(expected_cut_given_errors(&g, &sol, &ErrorState::clean(4)).unwrap(), 4.0);
        let mut all = ErrorState::clean(4);
        all.fill();
        assert_eq!(expected_cut_given_errors(&g, &sol, &all).unwrap(), cut_average(&g));
        assert_eq!(expected_cut_given_errors(&g, &sol, &ErrorState::from_mask(4, 0b0100)).unwrap(), 3.0);
        assert!(expected_cut_given_errors(&g, &sol, &ErrorState::clean(5)).is_err());
    }

    #[test]
    fn azuma_values() {
        // alpha^2 |E| / (2 Δ² D²) = 100 / 1800
        let b = azuma_bound(0.1, 10_000, 3, 10.0, 1).unwrap();
        assert_relative_eq!(b.raw, 2.0 * (-1.0f64 / 18.0).exp(), max_relative = 1e-12);
        assert_eq!(b.value, 1.0);
        let tight = azuma_bound(0.5, 1_000_000, 3, 10.0, 1).unwrap();
        assert_relative_eq!(tight.raw, 2.0 * (-0.25e6f64 / 1800.0).exp(), max_relative = 1e-12);
        assert!(tight.value < 1e-50);
        // doubling D quadruples the denominator in 1D
        let a = azuma_bound(0.3, 5000, 3, 5.0, 1).unwrap();
        let d = azuma_bound(0.3, 5000, 3, 10.0, 1).unwrap();
        assert_relative_eq!((a.raw / 2.0).ln(), 4.0 * (d.raw / 2.0).ln(), max_relative = 1e-12);
        assert!(azuma_bound(0.1, 10, 3, 2.0, 3).is_err());
        assert!(azuma_bound(0.1, 10, 3, 2.0, 2).unwrap().implicit_constant);
    }
}
