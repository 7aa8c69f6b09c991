//! Clean events on disjoint regions are positively correlated.
//!
//! cargo run --release --example clean_correlations

use errprop::chain::{estimate_joint_clean, McConfig, NoiseParams};
use errprop::ArchitectureSchedule;

fn main() -> errprop::Result<()> {
    let params = NoiseParams::new(0.05)?;
    let config = McConfig::new(100_000, 4, 8)?;
    for schedule in [ArchitectureSchedule::one_d(36)?, ArchitectureSchedule::two_d(6)?, ArchitectureSchedule::nonlocal(36)?] {
        println!("{}", schedule.kind());
        for (a, b) in [(vec![0], vec![1]), (vec![0], vec![18]), (vec![0, 1, 2], vec![3, 4]), (vec![0, 7], vec![20, 30])] {
            let j = estimate_joint_clean(&schedule, &params, &config, &a, &b)?;
            println!(
                "  A={a:?} B={b:?}  P(A)P(B)={:.4}  P(A∪B)={:.4}  excess={:+.4} ± {:.4}",
                j.a.value * j.b.value,
                j.union.value,
                j.excess(),
                j.excess_stderr()
            );
        }
    }
    Ok(())
}
