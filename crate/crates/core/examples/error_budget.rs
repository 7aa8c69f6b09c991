//! Noise rate needed to keep half the qubits clean after a routed QAOA
//! circuit, and how deep a circuit can go before classical algorithms win.
//!
//! cargo run --release --example error_budget

use errprop::maxcut::GraphClass;
use errprop::planner::{max_useful_depth, required_error_rate, PlanMethod};
use errprop::Architecture;

fn main() -> errprop::Result<()> {
    println!("{:>6} {:>4} {:>7} {:>12}", "n", "arch", "depth", "required p");
    for n in [100, 300, 1000, 3000, 10_000] {
        for arch in [Architecture::OneD, Architecture::TwoD] {
            let plan = required_error_rate(arch, n, 0.5, PlanMethod::Heuristic)?;
            println!("{n:>6} {arch:>4} {:>7} {:>12.3e}", plan.depth, plan.required_p);
        }
    }

    let plan = required_error_rate(Architecture::OneD, 16, 0.5, PlanMethod::MonteCarlo { samples: 400, seed: 0 })?;
    println!("sampled check at n=16: p = {:.3e} after {} bisection steps", plan.required_p, plan.metadata.iterations);

    println!("useful depth for degree-3 graphs, n = 10^4:");
    for p in [1e-2, 1e-3, 1e-4, 1e-5] {
        println!(
            "  p={p:.0e}  1d {:>6}  2d {:>6}",
            max_useful_depth(Architecture::OneD, 10_000, p, GraphClass::Deg3)?,
            max_useful_depth(Architecture::TwoD, 10_000, p, GraphClass::Deg3)?
        );
    }
    Ok(())
}
