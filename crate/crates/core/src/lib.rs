//! Leader-follower formation control over a fading wireless link.
//!
//! The follower's bearing is sent to the leader through a finite-rate
//! quantizer over a two-state Markov channel whose reliability decays with
//! distance and bearing. Transmission times are chosen either by a
//! self-triggered rule derived from the channel's tail behaviour or by a
//! conventional event-triggered threshold.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod config;
pub mod engine;
pub mod output;
pub mod plant;
pub mod quantizer;
pub mod scenario;
pub mod trigger;

pub use channel::{ChannelConfig, MarkovChannelState};
pub use config::{ConfigError, ScenarioConfig};
pub use engine::{run_monte_carlo, run_sample_path, McSummary, SamplePath, Scheme, SimConfig};
pub use plant::{PlantParams, StateVec};
pub use quantizer::QuantizerState;
pub use trigger::{EventThreshold, TriggerParams};
