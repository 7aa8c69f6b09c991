//! Certified lower bound on the 1D depolarized fraction next to the sampled
//! value.
//!
//! cargo run --release --example rigorous_bound

use errprop::analytics::{heuristic_q_1d, rigorous_lower_bound_1d, RigorousBoundParams};
use errprop::chain::{estimate_q, McConfig, NoiseParams};
use errprop::ArchitectureSchedule;

fn main() -> errprop::Result<()> {
    let (n, p) = (200, 1e-2);
    let schedule = ArchitectureSchedule::one_d(n)?;
    let params = NoiseParams::new(p)?;
    for c in [0.25, 0.5] {
        let bound = RigorousBoundParams::new(c)?;
        println!("c = {c}");
        for depth in (20..=180).step_by(20) {
            let lb = rigorous_lower_bound_1d(n, depth as f64, p, &bound)?;
            let mc = estimate_q(&schedule, &params, &McConfig::new(1000, 5, depth)?);
            println!(
                "  D={depth:>3}  bound={lb:.4}  mc={:.4}  formula={:.4}",
                mc.q_frac,
                heuristic_q_1d(n, depth as f64, p)
            );
        }
    }
    Ok(())
}
