//! Growth of the depolarized region seeded by a single error with no further
//! noise, compared with (3/4) min(6t/5, n).
//!
//! cargo run --release --example light_cone

use errprop::chain::{mean_spread_from, NoiseParams};
use errprop::{ArchitectureSchedule, ErrorState};

fn main() -> errprop::Result<()> {
    let n = 200;
    let schedule = ArchitectureSchedule::one_d(n)?;
    let mut seed_error = ErrorState::clean(n);
    seed_error.set(n / 2);
    let means = mean_spread_from(&seed_error, &schedule, &NoiseParams::new(0.0)?, 200, 10_000, 3)?;
    for t in (10..=200).step_by(10) {
        let cone = 0.75 * (1.2 * t as f64).min(n as f64);
        println!("t={t:>3}  <q>={:>7.2}  cone={cone:>7.2}", means[t - 1]);
    }
    Ok(())
}
