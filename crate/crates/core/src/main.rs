use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fadetrig::config::{Scenario, ScenarioConfig, SchemeChoice, SEED_ENV};
use fadetrig::scenario::run_scenario;

/// Simulate leader-follower formation control over a fading channel and
/// write CSV results.
#[derive(Debug, Parser)]
#[command(name = "fadetrig", version)]
struct Cli {
    #[arg(long)]
    scenario: Option<Scenario>,
    /// Flat key=value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; falls back to FADETRIG_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Simulated time in seconds.
    #[arg(long)]
    horizon: Option<f64>,
    /// Integration step in seconds.
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<SchemeChoice>,
    #[arg(long, allow_hyphen_values = true)]
    fade_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    fade_duration: Option<f64>,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut kv = Vec::new();
        let mut push = |key, v: Option<String>| {
            if let Some(v) = v {
                kv.push((key, v));
            }
        };
        push("scenario", self.scenario.map(|s| s.to_string()));
        push("runs", self.runs.map(|v| v.to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("horizon_s", self.horizon.map(|v| v.to_string()));
        push("dt_s", self.dt.map(|v| v.to_string()));
        push(
            "out_dir",
            self.out_dir.as_ref().map(|p| p.display().to_string()),
        );
        push("fade_start_s", self.fade_start.map(|v| v.to_string()));
        push("fade_duration_s", self.fade_duration.map(|v| v.to_string()));
        kv
    }
}

fn load(cli: &Cli) -> Result<ScenarioConfig, fadetrig::ConfigError> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::default(),
    };
    for (key, value) in cli.overrides() {
        cfg.set(key, &value)?;
    }
    if cli.scheme.is_some() {
        cfg.scheme = cli.scheme;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_seed = std::env::var(SEED_ENV).ok();
    let loaded =
        load(&cli).and_then(|cfg| cfg.resolved_seed(env_seed.as_deref()).map(|s| (cfg, s)));
    let (cfg, seed) = match loaded {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match run_scenario(&cfg, seed) {
        Ok(report) => {
            print!("{}", report.render());
            if report.violations().total() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
