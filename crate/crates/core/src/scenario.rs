//! Scenario orchestration: resolve a [`ScenarioConfig`], run the Monte Carlo
//! batches and write their CSVs.
//!
//! Layout under `out_dir`: one subdirectory per scheme holding
//! `path_<seed>.csv`, `events_<seed>.csv`, `envelope.csv` and
//! `intervals_hist.csv`. The compare scenario writes `compare.csv` and
//! `compare_hist.csv` at the top level instead.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::config::{Scenario, ScenarioConfig};
use crate::engine::{
    run_monte_carlo, sweep_formations, CompareRow, McSummary, Scheme, ViolationCounts,
};
use crate::output::{emit_outputs, write_compare, write_compare_histograms, OutputError};

/// Formation bearings of the comparison sweep, 0° to 50° in 10° steps.
pub fn compare_bearings() -> Vec<f64> {
    (0..=5).map(|i| (10.0 * i as f64).to_radians()).collect()
}

#[derive(Debug)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub seed: u64,
    pub summaries: Vec<McSummary>,
    pub compare: Vec<CompareRow>,
    pub files: Vec<PathBuf>,
}

impl ScenarioReport {
    pub fn violations(&self) -> ViolationCounts {
        let all = self
            .summaries
            .iter()
            .chain(self.compare.iter().map(|r| &r.summary))
            .map(|s| s.violations);
        all.fold(ViolationCounts::default(), |acc, v| ViolationCounts {
            containment: acc.containment + v.containment,
            eta: acc.eta + v.eta,
            omega: acc.omega + v.omega,
            other: acc.other + v.other,
        })
    }

    /// Human-readable digest for the terminal.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario {} (base seed {})", self.scenario, self.seed);
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
        for m in &self.summaries {
            let _ = writeln!(
                s,
                "  {:<5} runs={} min_interval={} mean_interval={} err_L={:.4} err_alpha={:.4} frac<0.01s={:.3} violations={}",
                m.scheme,
                m.runs.len(),
                opt(m.pooled_min_interval),
                opt(m.pooled_mean_interval),
                m.mean_err_l(),
                m.mean_err_alpha(),
                m.histogram.fractions()[0],
                m.violations.total(),
            );
        }
        for r in &self.compare {
            let _ = writeln!(
                s,
                "  alpha_d={:>4.0}deg {:<5} min_interval={} mean_interval={} err_L={:.4} err_alpha={:.4} violations={}",
                r.alpha_d.to_degrees(),
                r.scheme,
                opt(r.min_interval),
                opt(r.mean_interval),
                r.err_l,
                r.err_alpha,
                r.summary.violations.total(),
            );
        }
        let v = self.violations();
        let _ = writeln!(
            s,
            "  violations: containment={} eta={} omega={} other={}",
            v.containment, v.eta, v.omega, v.other
        );
        let _ = writeln!(s, "  wrote {} files", self.files.len());
        s
    }
}

/// Run `cfg` with base seed `seed` and write its outputs.
pub fn run_scenario(cfg: &ScenarioConfig, seed: u64) -> Result<ScenarioReport, OutputError> {
    let mut report = ScenarioReport {
        scenario: cfg.scenario,
        seed,
        summaries: Vec::new(),
        compare: Vec::new(),
        files: Vec::new(),
    };

    if cfg.scenario == Scenario::Compare {
        std::fs::create_dir_all(&cfg.out_dir).map_err(|e| OutputError {
            path: cfg.out_dir.clone(),
            source: e.into(),
        })?;
        let rows = sweep_formations(
            &cfg.sim_for(Scheme::SelfTriggered),
            &compare_bearings(),
            seed,
            cfg.runs,
        );
        report.files.push(write_compare(&rows, &cfg.out_dir)?);
        report
            .files
            .push(write_compare_histograms(&rows, &cfg.out_dir)?);
        report.compare = rows;
        return Ok(report);
    }

    for scheme in cfg.schemes() {
        let mc = run_monte_carlo(&cfg.sim_for(scheme), seed, cfg.runs);
        let dir = cfg.out_dir.join(scheme.as_str());
        report
            .files
            .extend(emit_outputs(&mc.summary, &mc.paths, &dir)?);
        report.summaries.push(mc.summary);
    }
    Ok(report)
}
