//! One seeded sample path under the self-triggered scheme, with its
//! transmission log.
//!
//! ```text
//! cargo run --release --example single_path -- [seed]
//! ```

use fadetrig::engine::{run_sample_path, Scheme, SimConfig};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let cfg = SimConfig {
        scheme: Scheme::SelfTriggered,
        ..SimConfig::default()
    };
    let path = run_sample_path(&cfg, seed);

    println!("  k      t_k   interval  r_k        U⁺       |e⁺|");
    for r in path.transmissions.iter().take(15) {
        println!(
            "{:>3} {:>8.4} {:>10} {:>4} {:>9.2e} {:>9.2e}",
            r.k,
            r.t_k,
            r.interval.map_or("-".into(), |v| format!("{v:.4}")),
            r.r_k,
            r.u_post,
            r.est_error_post
        );
    }
    println!("... {} transmissions in total", path.transmissions.len());

    let end = path.trace.last().expect("non-empty trace");
    println!(
        "t = {:.1} s: L = {:.5} m, alpha = {:.4} deg, |alpha - alpha_hat| = {:.2e}",
        end.t,
        end.l,
        end.alpha.to_degrees(),
        end.est_error.abs()
    );
    if let Some(f) = &path.failure {
        println!("path failed: {f}");
    }
}
