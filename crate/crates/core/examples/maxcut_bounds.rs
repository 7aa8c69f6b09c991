//! Mean cut of the noisy output on a ring against the energy bound, plus the
//! depolarized fractions at which classical algorithms win.
//!
//! cargo run --release --example maxcut_bounds

use errprop::chain::{McConfig, NoiseParams};
use errprop::maxcut::{
    approx_ratio_bound, brute_force_maxcut, classical_superiority_threshold, cut_average, empirical_cut_statistics,
    energy_upper_bound, CutSolution, Graph, GraphClass, CUBIC_CLASSICAL_RATIO, GOEMANS_WILLIAMSON_RATIO,
};
use errprop::ArchitectureSchedule;

fn main() -> errprop::Result<()> {
    for class in [GraphClass::Deg3, GraphClass::BipartiteDeg3] {
        for ratio in [CUBIC_CLASSICAL_RATIO, GOEMANS_WILLIAMSON_RATIO] {
            let q = classical_superiority_threshold(class, ratio)?;
            println!("{class:<15} classical {ratio}: quantum can only win below q/n = {q:.4}");
        }
    }

    let petersen = Graph::parse(
        "0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5",
    )?;
    let best = brute_force_maxcut(&petersen)?;
    println!("petersen: C_max = {}, C_avg = {}", best.value, cut_average(&petersen));

    let n = 64;
    let ring = Graph::ring(n)?;
    let sol = CutSolution::from_assignment(&ring, (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())?;
    let schedule = ArchitectureSchedule::one_d(n)?;
    let params = NoiseParams::new(1e-3)?;
    println!("ring of {n}: C_max = {}, C_avg = {}", sol.value, cut_average(&ring));
    for depth in [10, 50, 100, 200] {
        let stats = empirical_cut_statistics(&ring, &sol, &schedule, &params, &McConfig::new(2000, 1, depth)?)?;
        let bound = energy_upper_bound(sol.value, cut_average(&ring), stats.q_frac)?;
        println!(
            "  D={depth:>3}  q/n={:.3}  mean cut={:.3} ± {:.3}  bound={bound:.3}  ratio bound (bipartite)={:.3}",
            stats.q_frac,
            stats.mean,
            stats.stderr,
            approx_ratio_bound(stats.q_frac, GraphClass::BipartiteDeg3)?
        );
    }
    Ok(())
}
