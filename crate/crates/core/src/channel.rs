//! State-dependent bursty fading channel.
//!
//! Two views of the same link live here. The analytic view is the
//! exponentially-bounded-burstiness pair `h(α, L)`, `γ(α, L)` and the function
//! `G = e^{−hγ}(1 + hγ)` that the trigger consumes. The generative view is a
//! two-state (good/bad) Markov chain clocked once per transmitted bit, whose
//! transition probabilities depend on the normalized range `r = L/(p cos α)`.
//!
//! Blocks are sent most-significant first; the decoder can only use an
//! unbroken prefix of delivered blocks, so `R_k` is the length of that prefix.

use rand::Rng;
use thiserror::Error;

use crate::plant::StateVec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("channel functions need L > 0, got L = {0}")]
    NonPositiveDistance(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig {
    /// Blocks per transmission, `R̄`.
    pub r_bar: u32,
    /// Transmission power.
    pub p: f64,
    /// Bits per block; equals the dimension of the quantized signal.
    pub bits_per_block: u32,
    pub h_coeff: f64,
    pub h_rate: f64,
    pub gamma_coeff: f64,
    /// Scale of both Markov transition probabilities.
    pub chain_scale: f64,
    /// Exponent rate in the bad-to-good transition probability.
    pub chain_decay: f64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            r_bar: 4,
            p: 8.0,
            bits_per_block: 1,
            h_coeff: 0.8,
            h_rate: 0.25,
            gamma_coeff: 8.0,
            chain_scale: 0.08,
            chain_decay: 0.25,
        }
    }
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.r_bar < 1 {
            return Err("r_bar must be >= 1".into());
        }
        if self.bits_per_block < 1 {
            return Err("bits_per_block must be >= 1".into());
        }
        if !(self.p > 0.0) {
            return Err(format!("p must be > 0, got {}", self.p));
        }
        for (name, v) in [
            ("h_coeff", self.h_coeff),
            ("h_rate", self.h_rate),
            ("gamma_coeff", self.gamma_coeff),
            ("chain_scale", self.chain_scale),
            ("chain_decay", self.chain_decay),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        Ok(())
    }

    /// Total bits clocked through the chain per transmission.
    pub fn bits_per_transmission(&self) -> u32 {
        self.r_bar * self.bits_per_block
    }
}

/// Whether the antenna pattern covers the bearing at all.
pub fn in_radiation_range(alpha: f64) -> bool {
    alpha.abs() < std::f64::consts::FRAC_PI_2
}

fn check_distance(state: StateVec) -> Result<(), ChannelError> {
    if state.l > 0.0 {
        Ok(())
    } else {
        Err(ChannelError::NonPositiveDistance(state.l))
    }
}

/// Normalized range `r = L/(p cos α)`; `None` outside the radiation range.
pub fn normalized_range(state: StateVec, cfg: &ChannelConfig) -> Result<Option<f64>, ChannelError> {
    check_distance(state)?;
    if !in_radiation_range(state.alpha) {
        return Ok(None);
    }
    Ok(Some(state.l / (cfg.p * state.alpha.cos())))
}

/// Rate threshold `h`, in blocks.
pub fn h_of(state: StateVec, cfg: &ChannelConfig) -> Result<f64, ChannelError> {
    Ok(match normalized_range(state, cfg)? {
        Some(r) => cfg.h_coeff * f64::from(cfg.r_bar) * (-cfg.h_rate * r).exp(),
        None => 0.0,
    })
}

/// Burstiness exponent `γ`.
pub fn gamma_of(state: StateVec, cfg: &ChannelConfig) -> Result<f64, ChannelError> {
    check_distance(state)?;
    if !in_radiation_range(state.alpha) {
        return Ok(0.0);
    }
    Ok(cfg.gamma_coeff * cfg.p * state.alpha.cos() / state.l)
}

/// `G(y) = e^{−y}(1 + y)` for `y = h·γ ≥ 0`.
pub fn g_of_product(y: f64) -> f64 {
    if y.is_infinite() {
        return 0.0;
    }
    (-y).exp() * (1.0 + y)
}

pub fn g_value(state: StateVec, cfg: &ChannelConfig) -> Result<f64, ChannelError> {
    let y = h_of(state, cfg)? * gamma_of(state, cfg)?;
    Ok(g_of_product(y))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionProbs {
    /// good → bad
    pub p12: f64,
    /// bad → good
    pub p21: f64,
}

impl TransitionProbs {
    /// Long-run fraction of bits spent in the good state.
    pub fn stationary_good(&self) -> f64 {
        let total = self.p12 + self.p21;
        if total == 0.0 {
            // Frozen chain; treat it as a perfect link.
            1.0
        } else {
            self.p21 / total
        }
    }
}

/// Per-bit transition probabilities, clamped to `[0, 1]`. Outside the
/// radiation range the chain is absorbed in the bad state.
pub fn transition_probs(
    state: StateVec,
    cfg: &ChannelConfig,
) -> Result<TransitionProbs, ChannelError> {
    let Some(r) = normalized_range(state, cfg)? else {
        return Ok(TransitionProbs { p12: 1.0, p21: 0.0 });
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let p12 = cfg.chain_scale * (half_pi * r).sqrt();
    let p21 = cfg.chain_scale * half_pi.sqrt() * r.sqrt() / (cfg.chain_decay * r).exp_m1();
    let clamp = |v: f64| if v.is_nan() { 1.0 } else { v.clamp(0.0, 1.0) };
    Ok(TransitionProbs {
        p12: clamp(p12),
        p21: clamp(p21),
    })
}

/// Per-bit good/bad state of the link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkovChannelState {
    pub good: bool,
}

impl MarkovChannelState {
    /// Draw from the stationary distribution at `state`.
    pub fn stationary<R: Rng + ?Sized>(
        state: StateVec,
        cfg: &ChannelConfig,
        rng: &mut R,
    ) -> Result<Self, ChannelError> {
        let pi_good = transition_probs(state, cfg)?.stationary_good();
        Ok(Self {
            good: rng.random::<f64>() < pi_good,
        })
    }

    fn step<R: Rng + ?Sized>(self, probs: TransitionProbs, rng: &mut R) -> Self {
        let u: f64 = rng.random();
        let good = if self.good {
            u >= probs.p12
        } else {
            u < probs.p21
        };
        Self { good }
    }
}

/// Length of the unbroken prefix of delivered blocks. A block is delivered
/// when every one of its bits arrived.
pub fn delivered_prefix(bits_ok: &[bool], bits_per_block: usize) -> u32 {
    bits_ok
        .chunks(bits_per_block)
        .take_while(|block| block.len() == bits_per_block && block.iter().all(|&ok| ok))
        .count() as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reception {
    pub r_k: u32,
    pub chan: MarkovChannelState,
}

/// Clock `R̄·n` bits through the chain and report how many leading blocks
/// arrived intact. The chain is advanced before each bit is observed.
pub fn sample_reception<R: Rng + ?Sized>(
    state: StateVec,
    chan: MarkovChannelState,
    cfg: &ChannelConfig,
    rng: &mut R,
) -> Result<Reception, ChannelError> {
    let probs = transition_probs(state, cfg)?;
    let n = cfg.bits_per_block as usize;
    let mut chan = chan;
    let mut r_k = 0;
    let mut intact = true;
    for block in 0..cfg.r_bar as usize {
        let mut block_ok = true;
        for _ in 0..n {
            chan = chan.step(probs, rng);
            block_ok &= chan.good;
        }
        // Bits after the first lost block are still clocked so the chain
        // state does not depend on what the decoder could use.
        if intact && block_ok {
            r_k = block as u32 + 1;
        } else {
            intact = false;
        }
    }
    Ok(Reception { r_k, chan })
}

/// One row of the burstiness comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EbbRow {
    pub sigma: f64,
    /// Empirical `Pr{R ≤ h − σ}`.
    pub empirical: f64,
    pub std_err: f64,
    /// `e^{−γσ}`.
    pub bound: f64,
}

impl EbbRow {
    /// Whether the empirical tail exceeds the bound by more than `k`
    /// standard errors.
    pub fn violated(&self, k: f64) -> bool {
        self.empirical > self.bound + k * self.std_err
    }
}

/// Independent receptions with the chain started from its stationary law.
pub fn stationary_receptions<R: Rng + ?Sized>(
    state: StateVec,
    cfg: &ChannelConfig,
    n_trials: usize,
    rng: &mut R,
) -> Result<Vec<u32>, ChannelError> {
    (0..n_trials)
        .map(|_| {
            let chan = MarkovChannelState::stationary(state, cfg, rng)?;
            Ok(sample_reception(state, chan, cfg, rng)?.r_k)
        })
        .collect()
}

/// Compare empirical reception tails against `e^{−γσ}` for each `σ`.
pub fn empirical_ebb_check<R: Rng + ?Sized>(
    state: StateVec,
    cfg: &ChannelConfig,
    sigmas: &[f64],
    n_trials: usize,
    rng: &mut R,
) -> Result<Vec<EbbRow>, ChannelError> {
    let h = h_of(state, cfg)?;
    let gamma = gamma_of(state, cfg)?;
    let samples = stationary_receptions(state, cfg, n_trials, rng)?;
    let n = samples.len() as f64;
    Ok(sigmas
        .iter()
        .map(|&sigma| {
            let level = h - sigma;
            let hits = samples.iter().filter(|&&r| f64::from(r) <= level).count() as f64;
            let freq = hits / n;
            EbbRow {
                sigma,
                empirical: freq,
                std_err: (freq * (1.0 - freq) / n).sqrt(),
                bound: (-gamma * sigma).exp(),
            }
        })
        .collect())
}

/// Sample mean and standard error of `2^{−R}` under the stationary chain.
pub fn resolution_loss<R: Rng + ?Sized>(
    state: StateVec,
    cfg: &ChannelConfig,
    n_trials: usize,
    rng: &mut R,
) -> Result<(f64, f64), ChannelError> {
    let samples = stationary_receptions(state, cfg, n_trials, rng)?;
    let n = samples.len() as f64;
    let vals: Vec<f64> = samples.iter().map(|&r| 0.5f64.powi(r as i32)).collect();
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}
