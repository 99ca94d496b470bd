//! Distribution of inter-transmission times at α_d = 0° for both schemes,
//! binned at 10 ms.
//!
//! ```text
//! cargo run --release --example interval_distribution -- [runs]
//! ```

use fadetrig::engine::{run_monte_carlo, Scheme, SimConfig};

fn main() {
    let runs = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    for scheme in Scheme::BOTH {
        let mut cfg = SimConfig {
            scheme,
            ..SimConfig::default()
        };
        cfg.plant.alpha_d = 0.0;
        let s = run_monte_carlo(&cfg, 0, runs).summary;
        let h = &s.histogram;

        println!("{scheme}-triggered, {} intervals", h.total());
        for (i, f) in h.fractions().iter().enumerate() {
            let lo = i as f64 * h.bin_width;
            println!(
                "  [{:.2}, {:.2}) {:>6.3} {}",
                lo,
                lo + h.bin_width,
                f,
                "#".repeat((f * 60.0) as usize)
            );
        }
        println!(
            "  >= {:.2}     {:>6.3}",
            h.counts.len() as f64 * h.bin_width,
            h.overflow_fraction()
        );
    }
}
