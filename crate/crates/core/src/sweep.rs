//! Depth sweeps of the depolarized fraction, emitted as CSV.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::analytics::formula_q;
use crate::chain::{estimate_q, McConfig, NoiseParams};
use crate::error::{Error, Result};
use crate::schedule::{Architecture, ArchitectureSchedule};

pub const CSV_HEADER: &str = "arch,n,p,depth,samples,q_mean,q_frac,q_stderr,heuristic_q_frac";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub arch: Architecture,
    pub n: usize,
    pub p: f64,
    pub depths: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub with_heuristic: bool,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub arch: Architecture,
    pub n: usize,
    pub p: f64,
    pub depth: usize,
    pub samples: usize,
    pub q_mean: f64,
    pub q_frac: f64,
    pub q_stderr: f64,
    pub heuristic_q_frac: Option<f64>,
    /// Not part of the CSV, which must be reproducible byte for byte.
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Parses `"10,20,40"`.
pub fn parse_depths(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad depth '{s}'"))))
        .collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let schedule = ArchitectureSchedule::new(spec.arch, spec.n)?;
    let params = NoiseParams::new(spec.p)?;
    if spec.depths.is_empty() {
        return Err(Error::InvalidArgument("empty depth list".into()));
    }
    if let Some(d) = spec.depths.iter().find(|&&d| d % 2 != 0) {
        return Err(Error::Config(format!("circuit depth must be even, got {d}")));
    }
    let mut depths = spec.depths.clone();
    depths.sort_unstable();
    depths.dedup();

    let mut rows = Vec::with_capacity(depths.len());
    for depth in depths {
        let config = McConfig::new(spec.samples, spec.seed, depth)?.with_threads(spec.threads);
        let start = Instant::now();
        let est = estimate_q(&schedule, &params, &config);
        let heuristic = if spec.with_heuristic { formula_q(spec.arch, spec.n, depth as f64, spec.p) } else { None };
        rows.push(SweepRow {
            arch: spec.arch,
            n: spec.n,
            p: spec.p,
            depth,
            samples: spec.samples,
            q_mean: est.q_mean,
            q_frac: est.q_frac,
            q_stderr: est.stderr,
            heuristic_q_frac: heuristic,
            wall_seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(SweepResult { rows })
}

impl SweepResult {
    /// Header plus one line per row. Floats use Rust's shortest round-trip
    /// formatting; a missing formula value is an empty field.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            let heuristic = r.heuristic_q_frac.map(|h| h.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.arch, r.n, r.p, r.depth, r.samples, r.q_mean, r.q_frac, r.q_stderr, heuristic
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}
