use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use errprop::maxcut::{self, GraphClass, CUBIC_CLASSICAL_RATIO};
use errprop::planner::{self, PlanMethod};
use errprop::sweep::{parse_depths, run_sweep, SweepSpec};
use errprop::twirl::{builtin_channel, haar_twirl_oracle, lambda_from_kraus, ChannelTag};
use errprop::{Architecture, Error, Result};

#[derive(Parser)]
#[command(name = "errprop", version, about = "Error propagation in noisy entangle/uncompute circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo depth sweep of the depolarized fraction, as CSV.
    Sweep {
        #[arg(long)]
        arch: Architecture,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// Comma-separated even depths.
        #[arg(long)]
        depths: String,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fill the closed-form column (1d and 2d only).
        #[arg(long)]
        with_heuristic: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Per-row timing on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Compare the analytic twirl strength with a Haar Monte Carlo estimate.
    TwirlVerify {
        #[arg(long)]
        channel: ChannelTag,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Depolarized fraction beyond which a classical algorithm wins.
    Threshold {
        #[arg(long)]
        class: GraphClass,
        #[arg(long, default_value_t = CUBIC_CLASSICAL_RATIO)]
        classical_ratio: f64,
    },
    /// Required single-qubit error rate for a routed QAOA circuit.
    Plan {
        #[arg(long)]
        arch: Architecture,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        target_q: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Heuristic)]
        method: MethodArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Energy and approximation-ratio bounds at a given depolarized fraction.
    Bound {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        q_frac: f64,
        #[arg(long)]
        cmax: Option<f64>,
        #[arg(long)]
        cavg: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Heuristic,
    Mc,
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { arch, n, p, depths, samples, seed, out, with_heuristic, threads, progress } => {
            let spec = SweepSpec { arch, n, p, depths: parse_depths(&depths)?, samples, seed, with_heuristic, threads };
            let result = run_sweep(&spec)?;
            if progress {
                for r in &result.rows {
                    eprintln!("{} n={} D={} q/n={:.4} ({:.2}s)", r.arch, r.n, r.depth, r.q_frac, r.wall_seconds);
                }
            }
            match out {
                Some(path) => result.write_csv(BufWriter::new(File::create(path)?))?,
                None => result.write_csv(io::stdout().lock())?,
            }
        }
        Command::TwirlVerify { channel, samples, seed } => {
            let kraus = builtin_channel(channel);
            let analytic = lambda_from_kraus(&kraus).lambda;
            let mc = haar_twirl_oracle(&kraus, samples, seed)?;
            // 1e-10 floor: deterministic channels have zero sampling spread
            let pass = (analytic - mc.lambda).abs() <= 3.0 * mc.stderr + 1e-10;
            print_json(&json!({
                "channel": channel.name(),
                "lambda_analytic": analytic,
                "lambda_mc": mc.lambda,
                "stderr": mc.stderr,
                "max_deviation": mc.max_deviation,
                "pass": pass,
            }))?;
        }
        Command::Threshold { class, classical_ratio } => {
            let q = maxcut::classical_superiority_threshold(class, classical_ratio)?;
            print_json(&json!({
                "class": class.tag(),
                "classical_ratio": classical_ratio,
                "q_frac_threshold": q,
            }))?;
        }
        Command::Plan { arch, n, target_q, method, samples, seed, threads } => {
            let method = match method {
                MethodArg::Heuristic => PlanMethod::Heuristic,
                MethodArg::Mc => PlanMethod::MonteCarlo { samples, seed },
            };
            let run = || planner::required_error_rate(arch, n, target_q, method);
            let plan = match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::Config(e.to_string()))?
                    .install(run)?,
                None => run()?,
            };
            print_json(&serde_json::to_value(plan).map_err(io::Error::from)?)?;
        }
        Command::Bound { graph, q_frac, cmax, cavg } => {
            let graph = graph.map(maxcut::load_graph).transpose()?;
            let c_max = match (cmax, &graph) {
                (Some(c), _) => c,
                (None, Some(g)) => maxcut::brute_force_maxcut(g)?.value,
                (None, None) => return Err(Error::InvalidArgument("need --graph or --cmax".into())),
            };
            let c_avg = match (cavg, &graph) {
                (Some(c), _) => c,
                (None, Some(g)) => maxcut::cut_average(g),
                (None, None) => return Err(Error::InvalidArgument("need --graph or --cavg".into())),
            };
            let energy = maxcut::energy_upper_bound(c_max, c_avg, q_frac)?;
            let ratio = maxcut::approx_ratio_bound(q_frac, GraphClass::Deg3)?;
            print_json(&json!({
                "c_max": c_max,
                "c_avg": c_avg,
                "q_frac": q_frac,
                "energy_upper_bound": energy,
                "approx_ratio_upper_bound_deg3": ratio,
            }))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("errprop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
