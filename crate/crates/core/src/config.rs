//! Flat `key = value` scenario configuration.
//!
//! Keys are the field names of the component parameter structs (angles in
//! radians, times in seconds) plus a handful of scenario keys. Blank lines and
//! `#` comments are ignored; unknown keys are rejected.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::engine::{DeepFade, Scheme, SimConfig};

pub const SEED_ENV: &str = "FADETRIG_SEED";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("invalid value for '{key}': {reason}")]
    Invalid { key: String, reason: String },
    #[error("line {line}: expected key = value, got '{text}'")]
    Syntax { line: usize, text: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: PathBuf, reason: String },
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Converge,
    Compare,
    Distribution,
    DeepFade,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::Converge => "converge",
            Scenario::Compare => "compare",
            Scenario::Distribution => "distribution",
            Scenario::DeepFade => "deepfade",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "converge" => Ok(Scenario::Converge),
            "compare" => Ok(Scenario::Compare),
            "distribution" => Ok(Scenario::Distribution),
            "deepfade" => Ok(Scenario::DeepFade),
            other => Err(format!(
                "unknown scenario '{other}' (expected converge, compare, distribution or deepfade)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    Only(Scheme),
    Both,
}

impl SchemeChoice {
    pub fn schemes(&self) -> Vec<Scheme> {
        match self {
            SchemeChoice::Only(s) => vec![*s],
            SchemeChoice::Both => Scheme::BOTH.to_vec(),
        }
    }
}

impl FromStr for SchemeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "both" => Ok(SchemeChoice::Both),
            other => other
                .parse::<Scheme>()
                .map(SchemeChoice::Only)
                .map_err(|_| format!("unknown scheme '{other}' (expected self, event or both)")),
        }
    }
}

pub const DEFAULT_FADE_START: f64 = 3.0;
pub const DEFAULT_FADE_DURATION: f64 = 0.6;

/// Everything a scenario run needs. Options left unset fall back to
/// scenario-specific defaults when the run is resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub runs: usize,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
    pub scheme: Option<SchemeChoice>,
    pub alpha_d: Option<f64>,
    pub fade_start: Option<f64>,
    pub fade_duration: Option<f64>,
    pub sim: SimConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::Converge,
            runs: 100,
            seed: None,
            out_dir: PathBuf::from("out"),
            scheme: None,
            alpha_d: None,
            fade_start: None,
            fade_duration: None,
            sim: SimConfig::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| invalid(key, e.to_string()))
}

fn positive(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse(key, value)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(
            key,
            format!("must be a finite number > 0, got {value}"),
        ))
    }
}

fn non_negative(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse(key, value)?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(
            key,
            format!("must be a finite number >= 0, got {value}"),
        ))
    }
}

fn finite(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse(key, value)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(key, format!("must be finite, got {value}")))
    }
}

fn at_least_one<T: FromStr + PartialOrd + From<u8>>(
    key: &str,
    value: &str,
) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    let v: T = parse(key, value)?;
    if v >= T::from(1u8) {
        Ok(v)
    } else {
        Err(invalid(key, format!("must be >= 1, got {value}")))
    }
}

impl ScenarioConfig {
    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        let sim = &mut self.sim;
        match key {
            "scenario" => self.scenario = value.parse().map_err(|e: String| invalid(key, e))?,
            "runs" => self.runs = at_least_one(key, value)?,
            "seed" => self.seed = Some(parse(key, value)?),
            "out_dir" => self.out_dir = PathBuf::from(value),
            "scheme" => self.scheme = Some(value.parse().map_err(|e: String| invalid(key, e))?),
            "horizon_s" => sim.horizon = positive(key, value)?,
            "dt_s" => sim.dt = positive(key, value)?,
            "fade_start_s" => self.fade_start = Some(non_negative(key, value)?),
            "fade_duration_s" => self.fade_duration = Some(non_negative(key, value)?),

            "l0" => sim.initial.l = positive(key, value)?,
            "alpha0" => sim.initial.alpha = finite(key, value)?,
            "alpha_hat0" => sim.alpha_hat0 = finite(key, value)?,
            "u0" => sim.u0 = positive(key, value)?,
            "resolution" => sim.resolution = non_negative(key, value)?,
            "l_floor" => sim.l_floor = positive(key, value)?,
            "scale_l" => sim.scale.l = positive(key, value)?,
            "scale_alpha" => sim.scale.alpha = positive(key, value)?,

            "r_bar" => sim.channel.r_bar = at_least_one(key, value)?,
            "p" => sim.channel.p = positive(key, value)?,
            "bits_per_block" => sim.channel.bits_per_block = at_least_one(key, value)?,
            "h_coeff" => sim.channel.h_coeff = non_negative(key, value)?,
            "h_rate" => sim.channel.h_rate = non_negative(key, value)?,
            "gamma_coeff" => sim.channel.gamma_coeff = non_negative(key, value)?,
            "chain_scale" => sim.channel.chain_scale = non_negative(key, value)?,
            "chain_decay" => sim.channel.chain_decay = non_negative(key, value)?,

            "k_l" => sim.plant.k_l = positive(key, value)?,
            "k_alpha" => sim.plant.k_alpha = positive(key, value)?,
            "l_d" => sim.plant.l_d = positive(key, value)?,
            "alpha_d" => self.alpha_d = Some(finite(key, value)?),
            "d" => sim.plant.d = positive(key, value)?,
            "v_gain" => sim.plant.v_gain = finite(key, value)?,
            "w_gain" => sim.plant.w_gain = finite(key, value)?,
            "noise_bound" => sim.plant.noise_bound = non_negative(key, value)?,

            "l_e" => sim.trigger.l_e = positive(key, value)?,
            "l_x" => sim.trigger.l_x = non_negative(key, value)?,
            "l_w" => sim.trigger.l_w = non_negative(key, value)?,
            "w1" => sim.trigger.w1 = positive(key, value)?,
            "w2" => sim.trigger.w2 = positive(key, value)?,
            "chi1_bar" => sim.trigger.chi1_bar = positive(key, value)?,
            "c1" => sim.trigger.c1 = positive(key, value)?,
            "c_chi" => sim.trigger.c_chi = non_negative(key, value)?,
            "m_bound" => sim.trigger.m_bound = non_negative(key, value)?,

            "coeff" => sim.threshold.coeff = positive(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Apply every assignment in `text` on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: raw.to_string(),
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::parse_str(&text)
    }

    /// Cross-field invariants, checked after all assignments.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let sim = &self.sim;
        if sim.dt > sim.horizon {
            return Err(invalid("dt_s", "must not exceed horizon_s"));
        }
        if sim.trigger.w1 > sim.trigger.w2 {
            return Err(invalid("w2", "must be >= w1"));
        }
        if (sim.initial.alpha - sim.alpha_hat0).abs() > sim.u0 {
            return Err(invalid(
                "u0",
                "initial box must contain |alpha0 - alpha_hat0|",
            ));
        }
        if let Some(fade) = self.fade() {
            if fade.start + fade.duration > sim.horizon {
                return Err(invalid(
                    "fade_start_s",
                    "fade window must end within horizon_s",
                ));
            }
        }
        for scheme in self.schemes() {
            self.sim_for(scheme)
                .validate()
                .map_err(|e| invalid("config", e))?;
        }
        Ok(())
    }

    /// Explicit seed, else `FADETRIG_SEED`, else 0.
    pub fn resolved_seed(&self, env_seed: Option<&str>) -> Result<u64, ConfigError> {
        match (self.seed, env_seed) {
            (Some(s), _) => Ok(s),
            (None, Some(v)) => v
                .trim()
                .parse()
                .map_err(|_| invalid(SEED_ENV, format!("not an integer: {v}"))),
            (None, None) => Ok(0),
        }
    }

    pub fn schemes(&self) -> Vec<Scheme> {
        let default = match self.scenario {
            Scenario::Converge => SchemeChoice::Only(Scheme::SelfTriggered),
            _ => SchemeChoice::Both,
        };
        self.scheme.unwrap_or(default).schemes()
    }

    /// Formation bearing; the distribution scenario defaults to 0.
    pub fn alpha_d(&self) -> f64 {
        self.alpha_d.unwrap_or(match self.scenario {
            Scenario::Distribution => 0.0,
            _ => self.sim.plant.alpha_d,
        })
    }

    /// Fade window; only the deepfade scenario has one by default.
    pub fn fade(&self) -> Option<DeepFade> {
        let explicit = self.fade_start.is_some() || self.fade_duration.is_some();
        if self.scenario != Scenario::DeepFade && !explicit {
            return None;
        }
        let fade = DeepFade {
            start: self.fade_start.unwrap_or(DEFAULT_FADE_START),
            duration: self.fade_duration.unwrap_or(DEFAULT_FADE_DURATION),
        };
        (fade.duration > 0.0).then_some(fade)
    }

    pub fn sim_for(&self, scheme: Scheme) -> SimConfig {
        let mut sim = self.sim.clone();
        sim.scheme = scheme;
        sim.plant.alpha_d = self.alpha_d();
        sim.fade = self.fade();
        sim
    }
}
