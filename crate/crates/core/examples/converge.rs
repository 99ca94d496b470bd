//! Monte Carlo convergence of the formation to (4 m, 20°) from (15 m, −30°),
//! self-triggered, with the min/max envelope over all runs.
//!
//! ```text
//! cargo run --release --example converge -- [runs] [out_dir]
//! ```

use std::path::PathBuf;

use fadetrig::engine::{run_monte_carlo, SimConfig};
use fadetrig::output::emit_outputs;

fn main() {
    let mut args = std::env::args().skip(1);
    let runs = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let out_dir = args.next().map(PathBuf::from);

    let cfg = SimConfig::default();
    let mc = run_monte_carlo(&cfg, 0, runs);
    let s = &mc.summary;

    println!("    t     L_min    L_max   alpha_min  alpha_max   (deg)");
    for e in s.envelope.iter().step_by(1000) {
        println!(
            "{:>5.1} {:>8.4} {:>8.4} {:>10.4} {:>10.4}",
            e.t,
            e.l_min,
            e.l_max,
            e.alpha_min.to_degrees(),
            e.alpha_max.to_degrees()
        );
    }

    let worst_l = mc
        .paths
        .iter()
        .map(|p| (p.trace.last().unwrap().l - cfg.plant.l_d).abs())
        .fold(0.0, f64::max);
    let worst_a = mc
        .paths
        .iter()
        .map(|p| (p.trace.last().unwrap().alpha - cfg.plant.alpha_d).abs())
        .fold(0.0, f64::max);
    println!(
        "worst terminal |L - L_d| = {worst_l:.2e} m, |alpha - alpha_d| = {:.2e} deg",
        worst_a.to_degrees()
    );
    println!("violations: {:?}", s.violations);

    if let Some(dir) = out_dir {
        let files = emit_outputs(s, &mc.paths, &dir).expect("writable output directory");
        println!("wrote {} files to {}", files.len(), dir.display());
    }
}
