//! Encoding one bearing with the bisection quantizer and decoding every
//! possible received prefix.

use fadetrig::quantizer::{decode, encode, propagate_half_width, QuantizerState};
use fadetrig::trigger::TriggerParams;

fn main() {
    let box0 = QuantizerState::new(vec![0.0], std::f64::consts::FRAC_PI_2);
    let signal = [0.4321];
    let blocks = encode(&signal, &box0, 4).unwrap();
    let bits: String = blocks
        .iter()
        .map(|b| if b.bits[0] { '1' } else { '0' })
        .collect();
    println!(
        "signal {} in [{:.4}, {:.4}] encodes to {bits}",
        signal[0], -box0.half_width, box0.half_width
    );

    for r in 0..=blocks.len() {
        let post = decode(&blocks[..r], &box0.center, box0.half_width);
        println!(
            "  {r} blocks received: center {:>8.5}, half-width {:.5}, error {:.5}",
            post.center[0],
            post.half_width,
            (signal[0] - post.center[0]).abs()
        );
        assert!(post.contains(&signal));
    }

    let post = decode(&blocks, &box0.center, box0.half_width);
    let growth = TriggerParams {
        l_e: 3.0,
        ..TriggerParams::default()
    };
    for t in [0.01, 0.1, 0.5] {
        println!(
            "  half-width after {t:.2} s without news: {:.5}",
            propagate_half_width(&post, t, &growth).unwrap()
        );
    }
}
