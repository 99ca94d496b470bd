//! All packets lost for 0.6 s starting at t = 3 s: how far each scheme lets
//! the bearing stray from its set-point after the fade.
//!
//! ```text
//! cargo run --release --example deep_fade -- [runs] [duration]
//! ```

use fadetrig::engine::{inject_deep_fade, run_monte_carlo, Scheme, SimConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let runs = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let duration: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.6);
    let start = 3.0;

    for scheme in Scheme::BOTH {
        let base = SimConfig {
            scheme,
            ..SimConfig::default()
        };
        let cfg = inject_deep_fade(&base, start, duration);
        let mc = run_monte_carlo(&cfg, 0, runs);

        let excursion = mc
            .paths
            .iter()
            .flat_map(|p| p.trace.iter())
            .filter(|q| q.t >= start + duration)
            .map(|q| (q.alpha - cfg.plant.alpha_d).abs())
            .fold(0.0, f64::max);
        let in_fade = mc
            .paths
            .iter()
            .flat_map(|p| p.transmissions.iter())
            .filter(|r| r.t_k >= start && r.t_k < start + duration)
            .count();
        println!(
            "{scheme:<5}: post-fade max |alpha - alpha_d| = {:>7.3} deg, {in_fade} transmissions lost in the fade, {} paths left the guaranteed region",
            excursion.to_degrees(),
            mc.summary.violations.omega,
        );
    }
}
