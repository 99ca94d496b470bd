//! Self- versus event-triggered transmission across formation bearings
//! 0°..50°: minimum and mean inter-transmission times and tracking errors.
//!
//! ```text
//! cargo run --release --example compare_schemes -- [runs]
//! ```

use fadetrig::engine::{sweep_formations, SimConfig};
use fadetrig::scenario::compare_bearings;

fn main() {
    let runs = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let rows = sweep_formations(&SimConfig::default(), &compare_bearings(), 0, runs);

    println!("alpha_d scheme  min_T     mean_T    err_L    err_alpha  err_x");
    for r in &rows {
        println!(
            "{:>5.0}   {:<6} {:>8.5} {:>8.4} {:>8.4} {:>9.4} {:>8.4}",
            r.alpha_d.to_degrees(),
            r.scheme.as_str(),
            r.min_interval.unwrap_or(f64::NAN),
            r.mean_interval.unwrap_or(f64::NAN),
            r.err_l,
            r.err_alpha,
            r.summary.mean_err_x(),
        );
    }
    for pair in rows.chunks(2) {
        let ratio =
            pair[0].min_interval.unwrap_or(f64::NAN) / pair[1].min_interval.unwrap_or(f64::NAN);
        println!(
            "alpha_d = {:>2.0}°: self/event minimum interval ratio {ratio:.1}",
            pair[0].alpha_d.to_degrees()
        );
    }
}
