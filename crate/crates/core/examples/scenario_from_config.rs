//! Driving a full scenario from a flat config file, as the command-line tool
//! does, and reading one of its CSVs back.

use fadetrig::config::ScenarioConfig;
use fadetrig::output::read_table;
use fadetrig::scenario::run_scenario;

const CONFIG: &str = "\
# short deep-fade run, both schemes
scenario = deepfade
runs = 8
fade_duration_s = 0.5
";

fn main() {
    let mut cfg = ScenarioConfig::parse_str(CONFIG).expect("valid config");
    cfg.out_dir = std::env::temp_dir().join("fadetrig-scenario-example");

    let report = run_scenario(&cfg, 11).expect("writable output directory");
    print!("{}", report.render());

    let (header, rows) = read_table(&cfg.out_dir.join("self").join("envelope.csv")).unwrap();
    println!(
        "envelope.csv: {} rows, columns {}",
        rows.len(),
        header.join(", ")
    );
}
