//! Self-triggered intervals across the state space, the calibration of the
//! growth rate and the guaranteed minimum over the path region.

use fadetrig::channel::{g_value, ChannelConfig};
use fadetrig::plant::StateVec;
use fadetrig::trigger::{
    calibrate_growth_rate, event_trigger_fired, min_interval_over, self_trigger_interval,
    EventThreshold, StateRegion, TriggerParams,
};

fn main() {
    let chan = ChannelConfig::default();
    let params = TriggerParams::default();

    let target = 0.3;
    let formation = StateVec::new(4.0, 20f64.to_radians());
    let start = StateVec::new(15.0, (-30f64).to_radians());
    println!(
        "growth rate giving a {target} s interval at the formation: {:.3} (default {})",
        calibrate_growth_rate(formation, &chan, target).unwrap(),
        params.l_e
    );

    println!(
        "\n  L \\ alpha  {}",
        [-45.0, -30.0, 0.0, 20.0, 50.0]
            .map(|d| format!("{d:>8}"))
            .join("")
    );
    for l in [4.0, 8.0, 15.0, 25.0] {
        let row: String = [-45.0, -30.0, 0.0, 20.0, 50.0f64]
            .iter()
            .map(|&d| {
                let g = g_value(StateVec::new(l, d.to_radians()), &chan).unwrap();
                format!("{:>8.4}", self_trigger_interval(g, &params).unwrap())
            })
            .collect();
        println!("  {l:>5} m   {row}");
    }

    let region = StateRegion::enclosing([start, formation]).unwrap();
    println!(
        "\nguaranteed minimum interval over L in [{}, {}], |alpha| <= {:.0} deg: {:.5} s",
        region.l_min,
        region.l_max,
        region.alpha_abs_max.to_degrees(),
        min_interval_over(&region, &params, &chan).unwrap()
    );

    let thr = EventThreshold::default();
    let tracking = start.minus(&formation);
    for e in [0.5, 1.5, 2.0] {
        println!(
            "event rule with |e| = {e}: fires = {}",
            event_trigger_fired(e, tracking, thr)
        );
    }
}
