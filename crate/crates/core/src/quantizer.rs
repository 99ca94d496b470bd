//! Event-based dynamic box quantizer.
//!
//! Encoder and decoder share a hypercube `center ± half_width` that is known
//! to contain the quantized signal. Each received block halves the box along
//! every dimension, most significant block first. Between transmissions both
//! sides move the center with the nominal flow and inflate the half-width by
//! the worst-case error growth, so the box stays a certified enclosure.

use thiserror::Error;

use crate::plant::{flow_map, PlantParams};
use crate::trigger::TriggerParams;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantizerError {
    #[error("signal {value} lies outside the box {center} ± {half_width} in dimension {dim}")]
    Containment {
        dim: usize,
        value: f64,
        center: f64,
        half_width: f64,
    },
    #[error("signal has {got} components but the box has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("eta = {0} is not positive; the interval is too long for these growth constants")]
    EtaNotPositive(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizerState {
    pub center: Vec<f64>,
    pub half_width: f64,
}

impl QuantizerState {
    pub fn new(center: Vec<f64>, half_width: f64) -> Self {
        assert!(half_width > 0.0, "half_width must be positive");
        Self { center, half_width }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.center.len()
            && x.iter()
                .zip(&self.center)
                .all(|(v, c)| (v - c).abs() <= self.half_width)
    }

    fn check(&self, x: &[f64]) -> Result<(), QuantizerError> {
        if x.len() != self.center.len() {
            return Err(QuantizerError::Dimension {
                expected: self.center.len(),
                got: x.len(),
            });
        }
        for (dim, (&value, &center)) in x.iter().zip(&self.center).enumerate() {
            if !((value - center).abs() <= self.half_width) {
                return Err(QuantizerError::Containment {
                    dim,
                    value,
                    center,
                    half_width: self.half_width,
                });
            }
        }
        Ok(())
    }
}

/// One prioritized block: a bit per quantized dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBlock {
    pub bits: Vec<bool>,
}

impl BitBlock {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

/// `1 → +1`, `0 → −1`.
pub fn q_map(block: &BitBlock) -> Vec<f64> {
    block
        .bits
        .iter()
        .map(|&b| if b { 1.0 } else { -1.0 })
        .collect()
}

/// Partial center after the given blocks, computed the same way on both ends.
fn refined_center(blocks: &[BitBlock], predicted_center: &[f64], half_width: f64) -> Vec<f64> {
    let mut offset = vec![0.0; predicted_center.len()];
    let mut weight = 1.0;
    for block in blocks {
        weight *= 0.5;
        for (o, q) in offset.iter_mut().zip(q_map(block)) {
            *o += weight * q;
        }
    }
    predicted_center
        .iter()
        .zip(offset)
        .map(|(c, o)| c + half_width * o)
        .collect()
}

/// Bisect the box `r_k` times around `x`, emitting the upper/lower choice per
/// dimension as one block per round.
pub fn encode(
    x: &[f64],
    pre_jump: &QuantizerState,
    r_k: u32,
) -> Result<Vec<BitBlock>, QuantizerError> {
    pre_jump.check(x)?;
    let mut blocks = Vec::with_capacity(r_k as usize);
    for _ in 0..r_k {
        let mid = refined_center(&blocks, &pre_jump.center, pre_jump.half_width);
        let bits = x.iter().zip(&mid).map(|(v, m)| v >= m).collect();
        blocks.push(BitBlock::new(bits));
    }
    Ok(blocks)
}

/// Post-jump box from the received prefix of blocks.
pub fn decode(
    blocks: &[BitBlock],
    predicted_center: &[f64],
    pre_jump_half_width: f64,
) -> QuantizerState {
    let center = refined_center(blocks, predicted_center, pre_jump_half_width);
    let half_width = pre_jump_half_width * 0.5f64.powi(blocks.len() as i32);
    QuantizerState::new(center, half_width)
}

/// Pre-jump half-width after `t_interval` seconds of error growth from a
/// post-jump box, with linear `β(s, 0) = c₁·s` and `χ₂(s) = c_χ·s`.
pub fn propagate_half_width(
    post_jump: &QuantizerState,
    t_interval: f64,
    params: &TriggerParams,
) -> Result<f64, QuantizerError> {
    let eta = params.eta(t_interval);
    if !(eta > 0.0) {
        return Err(QuantizerError::EtaNotPositive(eta));
    }
    let grow = (params.l_e * t_interval).exp();
    let grow_m1 = (params.l_e * t_interval).exp_m1();
    let center_norm = post_jump.center.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let forcing = params.l_x * params.c1 * (center_norm + post_jump.half_width)
        + params.l_w * params.m_bound
        + params.l_x * params.c_chi * params.m_bound;
    let u = (params.w2 / params.w1) * grow * post_jump.half_width
        + grow_m1 / (params.w1 * params.l_e) * forcing;
    Ok(u / eta)
}

/// Nominal flow of the transmitted bearing, in tracking-error coordinates
/// (`α − α_d`). Encoder and decoder both call this.
pub fn predict_center(center: &[f64], t_interval: f64, plant: &PlantParams) -> Vec<f64> {
    center
        .iter()
        .map(|c| flow_map(c + plant.alpha_d, t_interval, plant) - plant.alpha_d)
        .collect()
}
