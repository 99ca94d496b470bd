//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use fadetrig::channel::{
    empirical_ebb_check, g_value, gamma_of, h_of, resolution_loss, ChannelConfig,
};
use fadetrig::config::{Scenario, ScenarioConfig};
use fadetrig::engine::{
    inject_deep_fade, run_monte_carlo, McSummary, SamplePath, Scheme, SimConfig,
};
use fadetrig::plant::{
    alpha_l_kinematics, closed_loop_rhs, controller_outputs, flow_map, rk4_step, PlantParams,
    SimState, StateVec,
};
use fadetrig::scenario::{compare_bearings, run_scenario};
use fadetrig::trigger::{min_interval_over, StateRegion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RUNS: usize = 100;
const BASE_SEED: u64 = 0;

const C1_TERMINAL_L: f64 = 0.2;
const C1_TERMINAL_ALPHA_DEG: f64 = 1.0;
const C1_TIGHTEN_FROM: f64 = 2.0;
const C2_SMALL_INTERVAL: f64 = 0.01;
const C4_MIN_RATIO: f64 = 10.0;
const C4_ERR_REL: f64 = 0.25;
const C5_EVENT_SMALL_FRAC: f64 = 0.15;
const C6_FADE: (f64, f64) = (3.0, 0.6);
const C7_TRIALS: usize = 100_000;
const C7_SIGMAS: f64 = 3.0;
const C8_TRIALS: usize = 100_000;
const C8_SIGMAS: f64 = 3.0;
const C9_FORMULA_TOL: f64 = 1e-12;
const C9_IDENTITY_TOL: f64 = 1e-9;
const C9_IDENTITY_POINTS: usize = 10_000;

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, title: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome {
        id,
        title,
        pass,
        detail,
    }
}

struct Batch {
    cfg: SimConfig,
    summary: McSummary,
    paths: Vec<SamplePath>,
}

fn batch(cfg: SimConfig) -> Batch {
    let mc = run_monte_carlo(&cfg, BASE_SEED, RUNS);
    Batch {
        cfg,
        summary: mc.summary,
        paths: mc.paths,
    }
}

fn with_bearing(scheme: Scheme, alpha_d: f64) -> SimConfig {
    let mut cfg = SimConfig {
        scheme,
        ..SimConfig::default()
    };
    cfg.plant.alpha_d = alpha_d;
    cfg
}

fn key(alpha_d: f64, scheme: Scheme) -> (i64, Scheme) {
    ((alpha_d.to_degrees() * 1e6).round() as i64, scheme)
}

fn criterion_1(converge: &Batch) -> Outcome {
    let p = &converge.cfg.plant;
    let worst_l = converge
        .paths
        .iter()
        .map(|x| (x.trace.last().unwrap().l - p.l_d).abs())
        .fold(0.0, f64::max);
    let worst_a = converge
        .paths
        .iter()
        .map(|x| {
            (x.trace.last().unwrap().alpha - p.alpha_d)
                .abs()
                .to_degrees()
        })
        .fold(0.0, f64::max);
    let full_horizon = converge.paths.iter().all(|x| x.failure.is_none());

    let spread = |lo: f64, hi: f64, target: f64| (lo - target).abs().max((hi - target).abs());
    let tail: Vec<_> = converge
        .summary
        .envelope
        .iter()
        .filter(|e| e.t >= C1_TIGHTEN_FROM)
        .collect();
    let tightening = |f: &dyn Fn(&fadetrig::engine::EnvelopePoint) -> f64| {
        tail.windows(2).filter(|w| f(w[1]) > f(w[0])).count()
    };
    let bad_l = tightening(&|e| spread(e.l_min, e.l_max, p.l_d));
    let bad_a = tightening(&|e| spread(e.alpha_min, e.alpha_max, p.alpha_d));

    outcome(
        "C1",
        "convergence",
        full_horizon && worst_l <= C1_TERMINAL_L && worst_a <= C1_TERMINAL_ALPHA_DEG && bad_l == 0 && bad_a == 0,
        format!(
            "max|L(10)-4| = {worst_l:.3e} m (<= {C1_TERMINAL_L}), max|alpha(10)-20deg| = {worst_a:.3e} deg (<= {C1_TERMINAL_ALPHA_DEG}), envelope widenings after {C1_TIGHTEN_FROM} s: L {bad_l}, alpha {bad_a}"
        ),
    )
}

fn criterion_2(self_batches: &[&Batch]) -> Outcome {
    let mut below_floor = 0;
    let mut small = 0;
    let mut total = 0;
    let mut tightest_margin = f64::INFINITY;
    for b in self_batches {
        for path in &b.paths {
            let states = path
                .trace
                .iter()
                .map(|q| StateVec::new(q.l, q.alpha))
                .chain(path.transmissions.iter().map(|r| r.state));
            let region = StateRegion::enclosing(states).unwrap();
            let floor = min_interval_over(&region, &b.cfg.trigger, &b.cfg.channel).unwrap();
            for interval in path.intervals() {
                total += 1;
                tightest_margin = tightest_margin.min(interval - floor);
                if interval < floor {
                    below_floor += 1;
                }
                if interval < C2_SMALL_INTERVAL {
                    small += 1;
                }
            }
        }
    }
    outcome(
        "C2",
        "Zeno-freeness",
        below_floor == 0 && small == 0 && total > 0,
        format!(
            "{total} self-triggered intervals: {below_floor} below the region floor (tightest margin {tightest_margin:.3e} s), {small} below {C2_SMALL_INTERVAL} s"
        ),
    )
}

fn criterion_3(all: &[&Batch]) -> Outcome {
    let mut records = 0;
    let mut flagged = 0;
    let mut unboxed = 0;
    for b in all {
        flagged += b.summary.violations.containment;
        for path in &b.paths {
            for r in &path.transmissions {
                records += 1;
                if !(r.est_error_post <= r.u_post) {
                    unboxed += 1;
                }
            }
        }
    }
    outcome(
        "C3",
        "containment",
        flagged == 0 && unboxed == 0,
        format!(
            "{records} transmissions over {} batches: {flagged} flagged, {unboxed} with |e+| > U+",
            all.len()
        ),
    )
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn criterion_4(sweep: &BTreeMap<(i64, Scheme), Batch>, info: &mut Vec<String>) -> Outcome {
    let mut pass = true;
    let mut worst_ratio = f64::INFINITY;
    let mut worst_gap: f64 = 0.0;
    for alpha_d in compare_bearings() {
        let s = &sweep[&key(alpha_d, Scheme::SelfTriggered)].summary;
        let e = &sweep[&key(alpha_d, Scheme::EventTriggered)].summary;
        let ratio =
            s.pooled_min_interval.unwrap_or(0.0) / e.pooled_min_interval.unwrap_or(f64::INFINITY);
        let gap = rel_gap(s.mean_err_x(), e.mean_err_x());
        worst_ratio = worst_ratio.min(ratio);
        worst_gap = worst_gap.max(gap);
        pass &= ratio >= C4_MIN_RATIO && gap <= C4_ERR_REL;
        info.push(format!(
            "C4 alpha_d={:>2.0}deg: min interval ratio {ratio:.1}, err_x {:.4}/{:.4} (gap {:.1}%), err_L gap {:.1}%, err_alpha {:.4}/{:.4} (gap {:.1}%), event runs leaving the guaranteed region {}",
            alpha_d.to_degrees(),
            s.mean_err_x(),
            e.mean_err_x(),
            100.0 * gap,
            100.0 * rel_gap(s.mean_err_l(), e.mean_err_l()),
            s.mean_err_alpha(),
            e.mean_err_alpha(),
            100.0 * rel_gap(s.mean_err_alpha(), e.mean_err_alpha()),
            e.violations.omega,
        ));
    }
    outcome(
        "C4",
        "interval comparison",
        pass,
        format!(
            "worst self/event min-interval ratio {worst_ratio:.1} (>= {C4_MIN_RATIO}), worst tracking-error gap {:.1}% (<= {}%)",
            100.0 * worst_gap,
            100.0 * C4_ERR_REL
        ),
    )
}

fn criterion_5(sweep: &BTreeMap<(i64, Scheme), Batch>) -> Outcome {
    let s = sweep[&key(0.0, Scheme::SelfTriggered)]
        .summary
        .histogram
        .fractions()[0];
    let e = sweep[&key(0.0, Scheme::EventTriggered)]
        .summary
        .histogram
        .fractions()[0];
    outcome(
        "C5",
        "interval distribution",
        e >= C5_EVENT_SMALL_FRAC && s == 0.0,
        format!("fraction in [0, 0.01) s at alpha_d=0: event {e:.3} (>= {C5_EVENT_SMALL_FRAC}), self {s:.3} (= 0)"),
    )
}

fn post_fade_excursion(b: &Batch, end: f64) -> f64 {
    b.paths
        .iter()
        .flat_map(|p| p.trace.iter())
        .filter(|q| q.t >= end)
        .map(|q| (q.alpha - b.cfg.plant.alpha_d).abs())
        .fold(0.0, f64::max)
}

fn criterion_6(fade_self: &Batch, fade_event: &Batch, info: &mut Vec<String>) -> Outcome {
    let end = C6_FADE.0 + C6_FADE.1;
    let s = post_fade_excursion(fade_self, end);
    let e = post_fade_excursion(fade_event, end);
    for (name, b) in [("self", fade_self), ("event", fade_event)] {
        info.push(format!("C6 {name}: violations {:?}", b.summary.violations));
    }
    let short: Vec<f64> = Scheme::BOTH
        .iter()
        .map(|&scheme| {
            let b = batch(inject_deep_fade(
                &with_bearing(scheme, 20f64.to_radians()),
                C6_FADE.0,
                0.5,
            ));
            post_fade_excursion(&b, C6_FADE.0 + 0.5).to_degrees()
        })
        .collect();
    info.push(format!(
        "C6 with a 0.5 s fade: self {:.3} deg, event {:.3} deg",
        short[0], short[1]
    ));
    outcome(
        "C6",
        "deep fade",
        s <= e,
        format!(
            "post-fade max |alpha-alpha_d| over {RUNS} seeds: self {:.3} deg <= event {:.3} deg",
            s.to_degrees(),
            e.to_degrees()
        ),
    )
}

fn channel_grid() -> Vec<StateVec> {
    let mut out = Vec::new();
    for l in [4.0, 9.5, 15.0] {
        for deg in [-30.0, 0.0, 20.0, 50.0f64] {
            out.push(StateVec::new(l, deg.to_radians()));
        }
    }
    out
}

fn criterion_7(info: &mut Vec<String>) -> Outcome {
    let cfg = ChannelConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut held = 0;
    let grid = channel_grid();
    for &x in &grid {
        let (mean, se) = resolution_loss(x, &cfg, C7_TRIALS, &mut rng).unwrap();
        let g = g_value(x, &cfg).unwrap();
        let ok = mean <= g + C7_SIGMAS * se;
        held += usize::from(ok);
        info.push(format!(
            "C7 L={:>4} alpha={:>4.0}deg: E[2^-R] = {mean:.4} (se {se:.1e}) vs G = {g:.3e} {}",
            x.l,
            x.alpha.to_degrees(),
            if ok { "ok" } else { "exceeds" }
        ));
    }
    outcome(
        "C7",
        "resolution-loss bound",
        held == grid.len(),
        format!(
            "{held}/{} grid states satisfy mean(2^-R) <= G + {C7_SIGMAS} se over {C7_TRIALS} trials",
            grid.len()
        ),
    )
}

fn criterion_8(info: &mut Vec<String>) -> Outcome {
    let cfg = ChannelConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cells = 0;
    let mut violated = 0;
    for x in channel_grid() {
        let h = h_of(x, &cfg).unwrap();
        let sigmas: Vec<f64> = [0.25, 0.5, 0.75, 1.0].iter().map(|f| f * h).collect();
        let rows = empirical_ebb_check(x, &cfg, &sigmas, C8_TRIALS, &mut rng).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| r.violated(C8_SIGMAS)).collect();
        cells += rows.len();
        violated += bad.len();
        if let Some(r) = bad.last() {
            info.push(format!(
                "C8 L={:>4} alpha={:>4.0}deg: {}/{} sigmas violate, e.g. sigma={:.3}: Pr = {:.4} vs bound {:.3e}",
                x.l,
                x.alpha.to_degrees(),
                bad.len(),
                rows.len(),
                r.sigma,
                r.empirical,
                r.bound
            ));
        }
    }
    outcome(
        "C8",
        "burstiness bound",
        violated == 0,
        format!("{violated}/{cells} (state, sigma) cells exceed exp(-gamma sigma) by more than {C8_SIGMAS} se"),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let close = |failures: &mut Vec<String>, name: &str, got: f64, want: f64, tol: f64| {
        if !((got - want).abs() <= tol) {
            failures.push(format!("{name}: {got} vs {want}"));
        }
    };

    let cfg = ChannelConfig::default();
    let start = StateVec::new(15.0, (-30f64).to_radians());
    let formation = StateVec::new(4.0, 20f64.to_radians());
    // 3.2·exp(−0.25·L/(8 cos α)), 64·cos α/L and e^{−y}(1+y)
    for (x, h, gamma, g) in [
        (
            start,
            1.8624353000507512,
            3.695041722813605,
            0.008089220849960456,
        ),
        (
            formation,
            2.8014260420009474,
            15.035081932574535,
            2.1995565821673288e-17,
        ),
    ] {
        close(
            &mut failures,
            "h",
            h_of(x, &cfg).unwrap(),
            h,
            C9_FORMULA_TOL,
        );
        close(
            &mut failures,
            "gamma",
            gamma_of(x, &cfg).unwrap(),
            gamma,
            C9_FORMULA_TOL,
        );
        close(
            &mut failures,
            "G",
            g_value(x, &cfg).unwrap(),
            g,
            C9_FORMULA_TOL,
        );
    }
    let p = PlantParams::default();
    let p20 = PlantParams {
        alpha_d: 0.349066,
        ..p
    };
    close(
        &mut failures,
        "flow",
        flow_map(0.5, 1.0, &p20),
        0.4045915155737705,
        C9_FORMULA_TOL,
    );
    let p0 = PlantParams { alpha_d: 0.0, ..p };
    let rates = closed_loop_rhs(&SimState::new(4.0, 0.1, 0.2), 0.0, 0.0, &p0).unwrap();
    close(
        &mut failures,
        "alpha_dot",
        rates.x.alpha,
        -0.3409312686814136,
        C9_FORMULA_TOL,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..C9_IDENTITY_POINTS {
        let s = SimState::new(
            rng.random_range(0.5..30.0),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
        );
        let phi = rng.random_range(-3.1..3.1);
        let (n1, n2) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let v1 = p.v_gain * s.x.l + n1;
        let omega1 = p.w_gain * s.x.alpha + n2;
        let omega1_hat = p.w_gain * s.alpha_hat;
        let (v2, omega2) = controller_outputs(s.x.l, phi, s.alpha_hat, v1, omega1_hat, &p);
        let (l_dot, alpha_dot) = alpha_l_kinematics(s.x, phi, v1, omega1, v2, omega2, p.d);
        let want = closed_loop_rhs(&s, n1, n2, &p).unwrap();
        worst = worst
            .max((l_dot - want.x.l).abs())
            .max((alpha_dot - want.x.alpha).abs());
    }
    if worst > C9_IDENTITY_TOL {
        failures.push(format!("identity residual {worst:.3e}"));
    }

    let run = |dt: f64| {
        let mut s = SimState::new(15.0, (-30f64).to_radians(), 0.0);
        for _ in 0..(1.0 / dt).round() as usize {
            s = rk4_step(&s, dt, (0.0, 0.0), &p).unwrap();
        }
        s
    };
    let (a, b, c) = (run(0.2), run(0.1), run(0.05));
    let d = |u: &SimState, v: &SimState| (u.x.l - v.x.l).abs().max((u.x.alpha - v.x.alpha).abs());
    let order = (d(&a, &b) / d(&b, &c)).log2();
    if !(3.5..4.5).contains(&order) {
        failures.push(format!("RK4 observed order {order:.2}"));
    }

    let mut y = 1.0f64;
    for _ in 0..1000 {
        y = fadetrig::plant::rk4(y, 1e-3, |v: &f64| Ok::<_, ()>(-v)).unwrap();
    }
    close(&mut failures, "rk4 decay", y, (-1f64).exp(), 1e-10);

    outcome(
        "C9",
        "formula and identity checks",
        failures.is_empty(),
        if failures.is_empty() {
            format!("reference values to {C9_FORMULA_TOL}, identity residual {worst:.1e} over {C9_IDENTITY_POINTS} points, RK4 order {order:.2}")
        } else {
            failures.join("; ")
        },
    )
}

fn tree_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    let mut files = 0;
    for scenario in [
        Scenario::Converge,
        Scenario::Distribution,
        Scenario::DeepFade,
        Scenario::Compare,
    ] {
        let mut trees = Vec::new();
        for attempt in 0..2 {
            let mut cfg = ScenarioConfig {
                scenario,
                runs: 3,
                ..ScenarioConfig::default()
            };
            cfg.out_dir = tmp.path().join(format!("{scenario}-{attempt}"));
            run_scenario(&cfg, 42).unwrap();
            trees.push(tree_bytes(&cfg.out_dir));
        }
        files += trees[0].len();
        if trees[0] != trees[1] || trees[0].is_empty() {
            mismatched.push(scenario.to_string());
        }
    }
    outcome(
        "C10",
        "determinism",
        mismatched.is_empty(),
        format!("{files} CSV files across 4 scenarios compared byte for byte; mismatched: {mismatched:?}"),
    )
}

fn main() -> ExitCode {
    let mut info = Vec::new();

    let mut sweep = BTreeMap::new();
    for alpha_d in compare_bearings() {
        for scheme in Scheme::BOTH {
            sweep.insert(key(alpha_d, scheme), batch(with_bearing(scheme, alpha_d)));
        }
    }
    let fades: Vec<Batch> = Scheme::BOTH
        .iter()
        .map(|&s| {
            batch(inject_deep_fade(
                &with_bearing(s, 20f64.to_radians()),
                C6_FADE.0,
                C6_FADE.1,
            ))
        })
        .collect();
    let converge = &sweep[&key(20f64.to_radians(), Scheme::SelfTriggered)];

    let self_batches: Vec<&Batch> = sweep
        .iter()
        .filter(|((_, s), _)| *s == Scheme::SelfTriggered)
        .map(|(_, b)| b)
        .chain(std::iter::once(&fades[0]))
        .collect();
    let all: Vec<&Batch> = sweep.values().chain(fades.iter()).collect();

    let outcomes = vec![
        criterion_1(converge),
        criterion_2(&self_batches),
        criterion_3(&all),
        criterion_4(&sweep, &mut info),
        criterion_5(&sweep),
        criterion_6(&fades[0], &fades[1], &mut info),
        criterion_7(&mut info),
        criterion_8(&mut info),
        criterion_9(),
        criterion_10(),
    ];

    for line in &info {
        println!("  info {line}");
    }
    for o in &outcomes {
        println!(
            "{} {:<4} {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
