//! Sample-path executor and Monte Carlo harness.
//!
//! A path alternates continuous flow of the closed loop with stochastic
//! jumps at transmission instants. At each transmission the channel decides
//! how many blocks arrive, the quantizer box is refined by that many
//! bisections and the follower's predictor is reset to the box center. The
//! self-triggered scheme then schedules the next instant from `G` at the
//! current state; the event-triggered scheme checks its threshold after every
//! integration step.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{g_value, sample_reception, ChannelConfig, ChannelError, MarkovChannelState};
use crate::plant::{rk4_step, PlantError, PlantParams, SimState, StateScale, StateVec};
use crate::quantizer::{
    decode, encode, predict_center, propagate_half_width, QuantizerError, QuantizerState,
};
use crate::trigger::{
    event_trigger_fired_scaled, omega_x_member, self_trigger_interval, EventThreshold,
    TriggerError, TriggerParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scheme {
    SelfTriggered,
    EventTriggered,
}

impl Scheme {
    pub const BOTH: [Scheme; 2] = [Scheme::SelfTriggered, Scheme::EventTriggered];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::SelfTriggered => "self",
            Scheme::EventTriggered => "event",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "self" => Ok(Scheme::SelfTriggered),
            "event" => Ok(Scheme::EventTriggered),
            other => Err(format!("unknown scheme '{other}' (expected self or event)")),
        }
    }
}

/// Window `[start, start + duration)` during which every transmission is lost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeepFade {
    pub start: f64,
    pub duration: f64,
}

impl DeepFade {
    pub fn covers(&self, t: f64) -> bool {
        t >= self.start && t < self.start + self.duration
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub channel: ChannelConfig,
    pub plant: PlantParams,
    pub trigger: TriggerParams,
    pub threshold: EventThreshold,
    pub scale: StateScale,
    pub initial: StateVec,
    /// Nominal bearing estimate shared by both ends before the first packet.
    pub alpha_hat0: f64,
    /// Initial quantizer half-width; must cover `|α(0) − alpha_hat0|`.
    pub u0: f64,
    pub horizon: f64,
    pub dt: f64,
    pub scheme: Scheme,
    pub fade: Option<DeepFade>,
    /// Added to every post-jump half-width so floating-point rounding in the
    /// center can never push the signal out of the box.
    pub resolution: f64,
    /// Smallest separation for which the quantizer's growth bound is valid.
    pub l_floor: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            channel: ChannelConfig::default(),
            plant: PlantParams::default(),
            trigger: TriggerParams::default(),
            threshold: EventThreshold::default(),
            scale: StateScale::default(),
            initial: StateVec::new(15.0, -30f64.to_radians()),
            alpha_hat0: 0.0,
            u0: std::f64::consts::FRAC_PI_2,
            horizon: 10.0,
            dt: 1e-3,
            scheme: Scheme::SelfTriggered,
            fade: None,
            resolution: 1e-9,
            l_floor: 1.0,
        }
    }
}

impl SimConfig {
    /// Error-growth constants used to propagate the quantizer box.
    pub fn quantizer_growth(&self) -> TriggerParams {
        self.plant.estimation_error_bounds(self.l_floor)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.channel.validate()?;
        self.plant.validate()?;
        self.trigger.validate()?;
        if !(self.threshold.coeff > 0.0) {
            return Err("event threshold coefficient must be > 0".into());
        }
        if !(self.horizon > 0.0) {
            return Err(format!("horizon must be > 0, got {}", self.horizon));
        }
        if !(self.dt > 0.0) || self.dt > self.horizon {
            return Err(format!("dt must be in (0, horizon], got {}", self.dt));
        }
        if !(self.initial.l > 0.0) {
            return Err("initial separation must be > 0".into());
        }
        if !(self.u0 > 0.0) {
            return Err("u0 must be > 0".into());
        }
        if (self.initial.alpha - self.alpha_hat0).abs() > self.u0 {
            return Err("initial quantizer box does not contain the initial bearing".into());
        }
        if !(self.resolution >= 0.0) {
            return Err("resolution must be >= 0".into());
        }
        if !(self.l_floor > 0.0) {
            return Err("l_floor must be > 0".into());
        }
        if let Some(f) = self.fade {
            if !(f.duration >= 0.0) || f.start < 0.0 || f.start + f.duration > self.horizon {
                return Err("fade window must lie within the horizon".into());
            }
        }
        Ok(())
    }

    fn grid_steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }
}

/// Copy of `config` whose transmissions in `[start, start + duration)` are
/// all lost. A zero duration leaves the config unchanged.
pub fn inject_deep_fade(config: &SimConfig, start: f64, duration: f64) -> SimConfig {
    let mut out = config.clone();
    if duration > 0.0 {
        out.fade = Some(DeepFade { start, duration });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub t: f64,
    pub l: f64,
    pub alpha: f64,
    pub alpha_hat: f64,
    pub est_error: f64,
    /// Certified bound on `|est_error|` at this instant.
    pub u: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionRecord {
    pub k: usize,
    pub t_k: f64,
    /// `t_k − t_{k−1}`; absent for the initial transmission.
    pub interval: Option<f64>,
    pub r_k: u32,
    pub u_post: f64,
    pub est_error_post: f64,
    /// Formation state sampled at `t_k`.
    pub state: StateVec,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FailureKind {
    #[error(transparent)]
    Quantizer(#[from] QuantizerError),
    #[error(transparent)]
    Trigger(#[from] TriggerError),
    #[error(transparent)]
    Plant(#[from] PlantError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("separation {0} dropped below the configured floor")]
    BelowDistanceFloor(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("path aborted at t = {t}: {kind}")]
pub struct PathFailure {
    pub t: f64,
    pub kind: FailureKind,
}

impl PathFailure {
    pub fn is_containment(&self) -> bool {
        matches!(
            self.kind,
            FailureKind::Quantizer(QuantizerError::Containment { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    pub seed: u64,
    pub scheme: Scheme,
    pub trace: Vec<TracePoint>,
    pub transmissions: Vec<TransmissionRecord>,
    pub failure: Option<PathFailure>,
}

impl SamplePath {
    pub fn intervals(&self) -> impl Iterator<Item = f64> + '_ {
        self.transmissions.iter().filter_map(|r| r.interval)
    }
}

/// Mutable state of one running path.
struct PathRun<'a> {
    cfg: &'a SimConfig,
    growth: TriggerParams,
    chan_rng: ChaCha8Rng,
    noise_rng: ChaCha8Rng,
    chan: MarkovChannelState,
    sim: SimState,
    /// Post-jump box of the last transmission, in `α − α_d` coordinates.
    post: QuantizerState,
    last_tx: f64,
    next_tx: f64,
    records: Vec<TransmissionRecord>,
}

impl<'a> PathRun<'a> {
    fn fail<E: Into<FailureKind>>(t: f64) -> impl FnOnce(E) -> PathFailure {
        move |e| PathFailure { t, kind: e.into() }
    }

    fn pre_jump_box(&self, t: f64) -> Result<QuantizerState, PathFailure> {
        let elapsed = t - self.last_tx;
        let u = propagate_half_width(&self.post, elapsed, &self.growth).map_err(Self::fail(t))?;
        let center = predict_center(&self.post.center, elapsed, &self.cfg.plant);
        Ok(QuantizerState {
            center,
            half_width: u,
        })
    }

    fn transmit(&mut self, t: f64, pre: QuantizerState) -> Result<(), PathFailure> {
        let cfg = self.cfg;
        let x = self.sim.x;
        if x.l < cfg.l_floor {
            return Err(PathFailure {
                t,
                kind: FailureKind::BelowDistanceFloor(x.l),
            });
        }
        let rec = sample_reception(x, self.chan, &cfg.channel, &mut self.chan_rng)
            .map_err(Self::fail(t))?;
        self.chan = rec.chan;
        let r_k = match cfg.fade {
            Some(f) if f.covers(t) => 0,
            _ => rec.r_k,
        };

        let signal = [x.alpha - cfg.plant.alpha_d];
        let blocks = encode(&signal, &pre, r_k).map_err(Self::fail(t))?;
        let mut post = decode(&blocks, &pre.center, pre.half_width);
        post.half_width += cfg.resolution;
        if !post.contains(&signal) {
            return Err(PathFailure {
                t,
                kind: QuantizerError::Containment {
                    dim: 0,
                    value: signal[0],
                    center: post.center[0],
                    half_width: post.half_width,
                }
                .into(),
            });
        }
        self.sim.alpha_hat = post.center[0] + cfg.plant.alpha_d;

        let k = self.records.len();
        self.records.push(TransmissionRecord {
            k,
            t_k: t,
            interval: (k > 0).then_some(t - self.last_tx),
            r_k,
            u_post: post.half_width,
            est_error_post: self.sim.est_error().abs(),
            state: x,
        });
        self.post = post;
        self.last_tx = t;

        if cfg.scheme == Scheme::SelfTriggered {
            let g = g_value(x, &cfg.channel).map_err(Self::fail(t))?;
            let interval = self_trigger_interval(g, &cfg.trigger).map_err(Self::fail(t))?;
            self.next_tx = t + interval;
        }
        Ok(())
    }

    fn advance(&mut self, from: f64, to: f64, noise: (f64, f64)) -> Result<(), PathFailure> {
        if to > from {
            self.sim =
                rk4_step(&self.sim, to - from, noise, &self.cfg.plant).map_err(Self::fail(from))?;
        }
        Ok(())
    }

    fn check_omega(&self, t: f64) -> Result<(), PathFailure> {
        let x = self.sim.x;
        if omega_x_member(x, &self.cfg.trigger, &self.cfg.channel).map_err(Self::fail(t))? {
            Ok(())
        } else {
            let g = g_value(x, &self.cfg.channel).map_err(Self::fail(t))?;
            Err(PathFailure {
                t,
                kind: TriggerError::OutsideOmega(self.cfg.trigger.ratio() * g).into(),
            })
        }
    }

    fn trace_point(&self, t: f64) -> Result<TracePoint, PathFailure> {
        let u = propagate_half_width(&self.post, t - self.last_tx, &self.growth)
            .map_err(Self::fail(t))?;
        Ok(TracePoint {
            t,
            l: self.sim.x.l,
            alpha: self.sim.x.alpha,
            alpha_hat: self.sim.alpha_hat,
            est_error: self.sim.est_error(),
            u,
        })
    }

    fn draw_noise(&mut self) -> (f64, f64) {
        let m = self.cfg.plant.noise_bound;
        if m > 0.0 {
            (
                self.noise_rng.random_range(-m..=m),
                self.noise_rng.random_range(-m..=m),
            )
        } else {
            (0.0, 0.0)
        }
    }
}

/// Simulate one seeded sample path. Failures are recorded on the path rather
/// than returned, with the trace truncated at the failure time.
pub fn run_sample_path(config: &SimConfig, seed: u64) -> SamplePath {
    let mut trace = Vec::with_capacity(config.grid_steps() + 1);
    let (records, failure) = match simulate(config, seed, &mut trace) {
        Ok(records) => (records, None),
        Err((records, failure)) => (records, Some(failure)),
    };
    SamplePath {
        seed,
        scheme: config.scheme,
        trace,
        transmissions: records,
        failure,
    }
}

type PartialRun = (Vec<TransmissionRecord>, PathFailure);

fn simulate(
    cfg: &SimConfig,
    seed: u64,
    trace: &mut Vec<TracePoint>,
) -> Result<Vec<TransmissionRecord>, PartialRun> {
    let mut chan_rng = ChaCha8Rng::seed_from_u64(seed);
    chan_rng.set_stream(0);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(seed);
    noise_rng.set_stream(1);

    let chan =
        MarkovChannelState::stationary(cfg.initial, &cfg.channel, &mut chan_rng).map_err(|e| {
            (
                vec![],
                PathFailure {
                    t: 0.0,
                    kind: e.into(),
                },
            )
        })?;

    let prior = QuantizerState::new(vec![cfg.alpha_hat0 - cfg.plant.alpha_d], cfg.u0);
    let mut run = PathRun {
        cfg,
        growth: cfg.quantizer_growth(),
        chan_rng,
        noise_rng,
        chan,
        sim: SimState {
            x: cfg.initial,
            alpha_hat: cfg.alpha_hat0,
        },
        post: prior.clone(),
        last_tx: 0.0,
        next_tx: f64::INFINITY,
        records: Vec::new(),
    };

    let result = drive(&mut run, prior, trace);
    match result {
        Ok(()) => Ok(run.records),
        Err(f) => Err((run.records, f)),
    }
}

fn drive(
    run: &mut PathRun<'_>,
    prior: QuantizerState,
    trace: &mut Vec<TracePoint>,
) -> Result<(), PathFailure> {
    let cfg = run.cfg;
    let setpoint = cfg.plant.setpoint();
    run.transmit(0.0, prior)?;
    trace.push(run.trace_point(0.0)?);

    let steps = cfg.grid_steps();
    for i in 0..steps {
        let mut t = i as f64 * cfg.dt;
        let t_end = (i + 1) as f64 * cfg.dt;
        let noise = run.draw_noise();

        if cfg.scheme == Scheme::SelfTriggered {
            while run.next_tx <= t_end {
                let t_tx = run.next_tx;
                run.advance(t, t_tx, noise)?;
                t = t.max(t_tx);
                let pre = run.pre_jump_box(t_tx)?;
                run.transmit(t_tx, pre)?;
            }
        }
        run.advance(t, t_end, noise)?;
        run.check_omega(t_end)?;

        if cfg.scheme == Scheme::EventTriggered {
            let fired = event_trigger_fired_scaled(
                run.sim.est_error(),
                run.sim.x.minus(&setpoint),
                cfg.threshold,
                cfg.scale,
            );
            if fired {
                let pre = run.pre_jump_box(t_end)?;
                run.transmit(t_end, pre)?;
            }
        }
        trace.push(run.trace_point(t_end)?);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub t: f64,
    pub l_min: f64,
    pub l_max: f64,
    pub l_mean: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub seed: u64,
    pub transmissions: usize,
    pub min_interval: Option<f64>,
    pub mean_interval: Option<f64>,
    /// `(1/T)∫|L − L_d| dt`
    pub err_l: f64,
    /// `(1/T)∫|α − α_d| dt`
    pub err_alpha: f64,
    /// `(1/T)∫|x − x_d|∞ dt`
    pub err_x: f64,
    pub failure: Option<PathFailure>,
}

/// Interval histogram over `[i·w, (i+1)·w)` plus an overflow bucket.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<usize>,
    pub overflow: usize,
}

impl Histogram {
    pub const BINS: usize = 10;
    pub const WIDTH: f64 = 0.01;

    pub fn from_intervals(intervals: impl IntoIterator<Item = f64>) -> Self {
        let mut counts = vec![0; Self::BINS];
        let mut overflow = 0;
        for v in intervals {
            let bin = (v / Self::WIDTH).floor();
            if bin >= 0.0 && (bin as usize) < Self::BINS {
                counts[bin as usize] += 1;
            } else {
                overflow += 1;
            }
        }
        Self {
            bin_width: Self::WIDTH,
            counts,
            overflow,
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.overflow
    }

    /// Mass per bin; zero everywhere when there are no intervals.
    pub fn fractions(&self) -> Vec<f64> {
        let n = self.total().max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    pub fn overflow_fraction(&self) -> f64 {
        self.overflow as f64 / self.total().max(1) as f64
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ViolationCounts {
    pub containment: usize,
    pub eta: usize,
    pub omega: usize,
    pub other: usize,
}

impl ViolationCounts {
    pub fn total(&self) -> usize {
        self.containment + self.eta + self.omega + self.other
    }

    fn record(&mut self, failure: &PathFailure) {
        match &failure.kind {
            FailureKind::Quantizer(QuantizerError::EtaNotPositive(_)) => self.eta += 1,
            FailureKind::Quantizer(_) => self.containment += 1,
            FailureKind::Trigger(TriggerError::OutsideOmega(_)) => self.omega += 1,
            _ => self.other += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub scheme: Scheme,
    pub envelope: Vec<EnvelopePoint>,
    pub runs: Vec<RunStats>,
    pub pooled_min_interval: Option<f64>,
    pub pooled_mean_interval: Option<f64>,
    pub histogram: Histogram,
    pub violations: ViolationCounts,
}

impl McSummary {
    pub fn from_paths(paths: &[SamplePath], plant: &PlantParams) -> Self {
        let scheme = paths
            .first()
            .map(|p| p.scheme)
            .unwrap_or(Scheme::SelfTriggered);
        let runs: Vec<RunStats> = paths.iter().map(|p| run_stats(p, plant)).collect();

        let mut violations = ViolationCounts::default();
        for f in paths.iter().filter_map(|p| p.failure.as_ref()) {
            violations.record(f);
        }

        let pooled: Vec<f64> = paths.iter().flat_map(|p| p.intervals()).collect();
        let pooled_min_interval = pooled.iter().copied().reduce(f64::min);
        let pooled_mean_interval =
            (!pooled.is_empty()).then(|| pooled.iter().sum::<f64>() / pooled.len() as f64);

        Self {
            scheme,
            envelope: envelope(paths),
            runs,
            pooled_min_interval,
            pooled_mean_interval,
            histogram: Histogram::from_intervals(pooled),
            violations,
        }
    }

    fn completed(&self) -> impl Iterator<Item = &RunStats> {
        self.runs.iter().filter(|r| r.failure.is_none())
    }

    /// Mean of `err_l` over runs that reached the horizon.
    pub fn mean_err_l(&self) -> f64 {
        mean(self.completed().map(|r| r.err_l))
    }

    pub fn mean_err_alpha(&self) -> f64 {
        mean(self.completed().map(|r| r.err_alpha))
    }

    pub fn mean_err_x(&self) -> f64 {
        mean(self.completed().map(|r| r.err_x))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

fn run_stats(path: &SamplePath, plant: &PlantParams) -> RunStats {
    let intervals: Vec<f64> = path.intervals().collect();
    let TrackingErrors {
        l: err_l,
        alpha: err_alpha,
        x: err_x,
    } = time_averaged_errors(&path.trace, plant);
    RunStats {
        seed: path.seed,
        transmissions: path.transmissions.len(),
        min_interval: intervals.iter().copied().reduce(f64::min),
        mean_interval: (!intervals.is_empty())
            .then(|| intervals.iter().sum::<f64>() / intervals.len() as f64),
        err_l,
        err_alpha,
        err_x,
        failure: path.failure.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingErrors {
    pub l: f64,
    pub alpha: f64,
    pub x: f64,
}

/// Trapezoid-rule time averages of `|L − L_d|`, `|α − α_d|` and their max.
pub fn time_averaged_errors(trace: &[TracePoint], plant: &PlantParams) -> TrackingErrors {
    let pointwise = |p: &TracePoint| {
        let (el, ea) = ((p.l - plant.l_d).abs(), (p.alpha - plant.alpha_d).abs());
        [el, ea, el.max(ea)]
    };
    let (Some(first), Some(last)) = (trace.first(), trace.last()) else {
        return TrackingErrors {
            l: f64::NAN,
            alpha: f64::NAN,
            x: f64::NAN,
        };
    };
    let span = last.t - first.t;
    let avg = if span <= 0.0 {
        pointwise(first)
    } else {
        let mut acc = [0.0; 3];
        for w in trace.windows(2) {
            let h = w[1].t - w[0].t;
            let (a, b) = (pointwise(&w[0]), pointwise(&w[1]));
            for i in 0..3 {
                acc[i] += 0.5 * h * (a[i] + b[i]);
            }
        }
        acc.map(|v| v / span)
    };
    TrackingErrors {
        l: avg[0],
        alpha: avg[1],
        x: avg[2],
    }
}

/// Pointwise min/max/mean over all paths that reached each grid index.
pub fn envelope(paths: &[SamplePath]) -> Vec<EnvelopePoint> {
    let len = paths.iter().map(|p| p.trace.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            let pts: Vec<&TracePoint> = paths.iter().filter_map(|p| p.trace.get(i)).collect();
            let n = pts.len() as f64;
            let fold = |f: fn(&TracePoint) -> f64| {
                pts.iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |(lo, hi, s), p| {
                        let v = f(p);
                        (lo.min(v), hi.max(v), s + v)
                    })
            };
            let (l_min, l_max, l_sum) = fold(|p| p.l);
            let (alpha_min, alpha_max, a_sum) = fold(|p| p.alpha);
            EnvelopePoint {
                t: pts[0].t,
                l_min,
                l_max,
                l_mean: l_sum / n,
                alpha_min,
                alpha_max,
                alpha_mean: a_sum / n,
            }
        })
        .collect()
}

pub struct MonteCarlo {
    pub summary: McSummary,
    pub paths: Vec<SamplePath>,
}

/// Seeds `base_seed .. base_seed + n_runs`, run in parallel and folded in
/// seed order.
pub fn run_monte_carlo(config: &SimConfig, base_seed: u64, n_runs: usize) -> MonteCarlo {
    assert!(n_runs >= 1, "n_runs must be at least 1");
    let paths: Vec<SamplePath> = (0..n_runs as u64)
        .into_par_iter()
        .map(|i| run_sample_path(config, base_seed.wrapping_add(i)))
        .collect();
    let summary = McSummary::from_paths(&paths, &config.plant);
    MonteCarlo { summary, paths }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub alpha_d: f64,
    pub scheme: Scheme,
    pub min_interval: Option<f64>,
    pub mean_interval: Option<f64>,
    pub err_l: f64,
    pub err_alpha: f64,
    pub summary: McSummary,
}

/// Both schemes at every formation bearing in `alpha_ds` (radians).
pub fn sweep_formations(
    config: &SimConfig,
    alpha_ds: &[f64],
    base_seed: u64,
    n_runs: usize,
) -> Vec<CompareRow> {
    let mut rows = Vec::with_capacity(alpha_ds.len() * 2);
    for &alpha_d in alpha_ds {
        for scheme in Scheme::BOTH {
            let mut cfg = config.clone();
            cfg.plant.alpha_d = alpha_d;
            cfg.scheme = scheme;
            let summary = run_monte_carlo(&cfg, base_seed, n_runs).summary;
            rows.push(CompareRow {
                alpha_d,
                scheme,
                min_interval: summary.pooled_min_interval,
                mean_interval: summary.pooled_mean_interval,
                err_l: summary.mean_err_l(),
                err_alpha: summary.mean_err_alpha(),
                summary,
            });
        }
    }
    rows
}
