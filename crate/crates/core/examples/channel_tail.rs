//! The fading channel in isolation: stationary good-bit probability, mean
//! resolution loss `E[2^-R]` against the bound `G`, and burst tails against
//! `e^{-γσ}` at a few formation states.
//!
//! ```text
//! cargo run --release --example channel_tail -- [trials]
//! ```

use fadetrig::channel::{
    empirical_ebb_check, g_value, gamma_of, h_of, resolution_loss, transition_probs, ChannelConfig,
};
use fadetrig::plant::StateVec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000);
    let cfg = ChannelConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    println!("   L   alpha      h       gamma     pi_good   E[2^-R] (se)        G");
    for (l, deg) in [
        (4.0, 20.0),
        (15.0, -30.0),
        (40.0, 0.0),
        (60.0, 0.0),
        (80.0, 45.0),
    ] {
        let x = StateVec::new(l, f64::to_radians(deg));
        let (mean, se) = resolution_loss(x, &cfg, trials, &mut rng).unwrap();
        println!(
            "{l:>5} {deg:>6} {:>8.4} {:>9.4} {:>9.4}   {mean:.4} ({se:.1e})   {:.3e}",
            h_of(x, &cfg).unwrap(),
            gamma_of(x, &cfg).unwrap(),
            transition_probs(x, &cfg).unwrap().stationary_good(),
            g_value(x, &cfg).unwrap(),
        );
    }

    let x = StateVec::new(15.0, f64::to_radians(-30.0));
    println!("\nburst tail at L = 15 m, alpha = -30 deg");
    println!("  sigma  Pr{{R <= h - sigma}}  exp(-gamma sigma)");
    for row in empirical_ebb_check(x, &cfg, &[0.25, 0.5, 1.0, 1.5], trials, &mut rng).unwrap() {
        println!(
            "  {:>5.2}  {:>10.5}           {:.3e}",
            row.sigma, row.empirical, row.bound
        );
    }
}
