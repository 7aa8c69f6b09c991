//! Monte Carlo depolarized fraction against the 1D closed form.
//!
//! cargo run --release --example depth_sweep

use errprop::sweep::{run_sweep, SweepSpec};
use errprop::Architecture;

fn main() -> errprop::Result<()> {
    let spec = SweepSpec {
        arch: Architecture::OneD,
        n: 100,
        p: 1e-3,
        depths: (20..=200).step_by(20).collect(),
        samples: 2000,
        seed: 1,
        with_heuristic: true,
        threads: None,
    };
    let result = run_sweep(&spec)?;
    println!("{:>5} {:>8} {:>8} {:>9}", "D", "mc", "stderr", "formula");
    for row in &result.rows {
        println!(
            "{:>5} {:>8.4} {:>8.4} {:>9.4}",
            row.depth,
            row.q_frac,
            row.q_stderr,
            row.heuristic_q_frac.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
