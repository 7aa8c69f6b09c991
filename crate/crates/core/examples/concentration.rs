//! Spread of single-run cut values around the mean, next to the martingale
//! tail bound.
//!
//! cargo run --release --example concentration

use errprop::chain::{McConfig, NoiseParams};
use errprop::maxcut::{azuma_bound, empirical_cut_statistics, CutSolution, Graph};
use errprop::ArchitectureSchedule;

fn main() -> errprop::Result<()> {
    let n = 64;
    let ring = Graph::ring(n)?;
    let sol = CutSolution::from_assignment(&ring, (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())?;
    let schedule = ArchitectureSchedule::one_d(n)?;
    for depth in [2, 10] {
        let stats = empirical_cut_statistics(&ring, &sol, &schedule, &NoiseParams::new(1e-3)?, &McConfig::new(2000, 2, depth)?)?;
        println!("D={depth}: mean {:.3}, 99% deviation {:.3}", stats.mean, stats.deviation_quantile(0.99));
        for alpha in [0.05, 0.1, 0.2] {
            let bound = azuma_bound(alpha, ring.edge_count(), ring.max_degree(), depth as f64, 1)?;
            println!(
                "  alpha={alpha}: tail {:.4}  bound {:.4} (uncapped {:.4})",
                stats.tail_frequency(alpha * ring.edge_count() as f64),
                bound.value,
                bound.raw
            );
        }
    }
    Ok(())
}
