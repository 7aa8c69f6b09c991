//! Brickwork chain, square torus and random pairings side by side, with the
//! fraction that local noise alone would produce.
//!
//! cargo run --release --example architecture_compare [side]

use errprop::analytics::{formula_q, local_noise_only_q};
use errprop::chain::{estimate_q, McConfig, NoiseParams};
use errprop::ArchitectureSchedule;

fn main() -> errprop::Result<()> {
    let side: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let n = side * side;
    let p = 1e-3;
    let params = NoiseParams::new(p)?;
    let layouts = [
        ArchitectureSchedule::one_d(n)?,
        ArchitectureSchedule::two_d(side)?,
        ArchitectureSchedule::nonlocal(n)?,
    ];
    println!("n = {n}, p = {p}");
    println!("{:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}", "D", "1d", "1d fit", "2d", "2d fit", "nl", "local");
    for depth in (10..=100).step_by(10) {
        let config = McConfig::new(1000, 2, depth)?;
        let q: Vec<f64> = layouts.iter().map(|s| estimate_q(s, &params, &config).q_frac).collect();
        let fit = |s: &ArchitectureSchedule| formula_q(s.kind(), n, depth as f64, p).unwrap_or(f64::NAN);
        println!(
            "{depth:>4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            q[0],
            fit(&layouts[0]),
            q[1],
            fit(&layouts[1]),
            q[2],
            local_noise_only_q(depth as f64, p)
        );
    }
    Ok(())
}
