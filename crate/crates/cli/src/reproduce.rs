//! Reference-number checks behind the `reproduce` subcommand.
//!
//! The report holds no timings, so two runs print identical bytes.

use std::f64::consts::PI;

use cornerscan::bounds;
use cornerscan::circle::{self, SequenceStatus, DEFAULT_STEP_CAP, DEFAULT_TOL, THRESHOLD_D_TOL};
use cornerscan::geometry::evaluate_trajectory;
use cornerscan::global;

use crate::output::{sig, text};

/// Scan-count thresholds: (scans, largest d, ratio there), six printed digits.
pub const TABLE1: [(usize, f64, f64); 6] = [
    (0, 0.618034, 1.618034),
    (1, 1.530414, 2.040287),
    (2, 2.799395, 2.155363),
    (3, 4.400876, 2.168544),
    (4, 6.316892, 2.147994),
    (5, 8.514200, 2.118498),
];
pub const TABLE1_TOL: f64 = 1e-5;

pub const D40_RANGE: (f64, f64) = (2.001515, 2.001535);
pub const D40_FEASIBLE_C: f64 = 2.0016;
pub const D40_INFEASIBLE_C: f64 = 2.0015;

pub const PEAK_D: f64 = 4.40088;
pub const PEAK_D_TOL: f64 = 5e-4;
pub const PEAK_C: f64 = 2.168544;
pub const PEAK_C_TOL: f64 = 1e-4;
/// Samples on [4, 5] at 1e-4 spacing.
pub const PEAK_SAMPLES: usize = 10_001;

pub const ONE_POINT_C: f64 = 1.808201;
pub const ONE_POINT_TOL: f64 = 1e-4;
pub const ONE_POINT_RESTARTS: usize = 16;

pub const GAP_D: f64 = 4.4;
pub const GAP_RANGE: (f64, f64) = (0.015, 0.035);
pub const GAP_RESTARTS: usize = 16;

pub const LOWER_BOUND_DELTAS: [f64; 5] = [0.01, 0.05, 0.1, 0.25, 0.5];

pub const TREND_DS: [f64; 5] = [10.0, 40.0, 160.0, 640.0, 2560.0];
pub const TREND_LAST_MAX: f64 = 2.001;
/// Optimal circle ratio at d = 2560, frozen from a bisection to 1e-12.
pub const TREND_LAST_FROZEN: f64 = 2.000_000_305_178_761_4;
pub const TREND_FROZEN_TOL: f64 = 2e-9;

pub const ORACLE_PAIRS: usize = 100;
pub const ORACLE_TOL: f64 = 1e-9;

pub const PI_BASELINE_D: f64 = 1e4;
pub const PI_BASELINE_REL: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(id: u32, name: &'static str, result: cornerscan::Result<(bool, String)>) -> Check {
    match result {
        Ok((passed, detail)) => Check { id, name, passed, detail },
        Err(e) => Check { id, name, passed: false, detail: format!("error: {e}") },
    }
}

pub fn table1() -> Check {
    check(1, "threshold table", (|| {
        let rows = circle::threshold_table(5, THRESHOLD_D_TOL)?;
        let mut worst: f64 = 0.0;
        for (row, (n, d, c)) in rows.iter().zip(TABLE1) {
            if row.n_scans != n {
                return Ok((false, format!("row {n} reported {} scans", row.n_scans)));
            }
            worst = worst.max((row.d_max - d).abs()).max((row.c_at_d_max - c).abs());
        }
        Ok((worst <= TABLE1_TOL, format!("max deviation {} over 6 rows", sig(worst, 3))))
    })())
}

pub fn d40() -> Check {
    check(2, "d = 40 optimum", (|| {
        let c = circle::solve_optimal_c(40.0, DEFAULT_TOL, DEFAULT_STEP_CAP)?.c_opt;
        let hi = circle::simulate_sequence(D40_FEASIBLE_C, 40.0, DEFAULT_STEP_CAP)?.status;
        let lo = circle::simulate_sequence(D40_INFEASIBLE_C, 40.0, DEFAULT_STEP_CAP)?.status;
        let passed = (D40_RANGE.0..=D40_RANGE.1).contains(&c)
            && hi == SequenceStatus::ReachedCorner
            && lo == SequenceStatus::Collapsed;
        Ok((passed, format!("c_opt = {}, c = 2.0016 {hi:?}, c = 2.0015 {lo:?}", text(c))))
    })())
}

pub fn peak() -> Check {
    check(3, "ratio peak", (|| {
        let curve = circle::ratio_curve(4.0, 5.0, PEAK_SAMPLES)?;
        let top = curve.iter().max_by(|a, b| a.c_opt.total_cmp(&b.c_opt)).expect("non-empty curve");
        let passed = (top.d - PEAK_D).abs() <= PEAK_D_TOL && (top.c_opt - PEAK_C).abs() <= PEAK_C_TOL;
        Ok((passed, format!("max c = {} at d = {}", text(top.c_opt), text(top.d))))
    })())
}

pub fn one_point() -> Check {
    check(4, "d = 1 free optimum", (|| {
        let opt = global::global_optimize(1.0, 1, ONE_POINT_RESTARTS)?;
        let passed = (opt.c_achieved - ONE_POINT_C).abs() <= ONE_POINT_TOL;
        Ok((passed, format!("c = {} with one scan point", text(opt.c_achieved))))
    })())
}

pub fn gap() -> Check {
    check(5, "circle vs free gap", (|| {
        let g = global::gap_to_circle(GAP_D, None, GAP_RESTARTS, global::DEFAULT_SEED)?;
        let passed = (GAP_RANGE.0..=GAP_RANGE.1).contains(&g.gap);
        Ok((
            passed,
            format!("d = {}, n = {}, circle {} / free {} - 1 = {}", GAP_D, g.n, text(g.circle_c), text(g.global_c), text(g.gap)),
        ))
    })())
}

pub fn lower_bound() -> Check {
    check(6, "lower-bound recursion", (|| {
        let mut passed = true;
        let mut parts = Vec::new();
        for delta in LOWER_BOUND_DELTAS {
            let r = bounds::lower_bound_experiment(delta, DEFAULT_STEP_CAP)?;
            passed &= r.holds();
            parts.push(format!("{delta}: {}/{}", text(r.total_distance), text(r.distance_bound)));
        }
        Ok((passed, parts.join(", ")))
    })())
}

pub fn trend() -> Check {
    check(7, "asymptotic trend", (|| {
        let trend = bounds::ratio_trend(&TREND_DS)?;
        let decreasing = trend.windows(2).all(|w| w[1].1 < w[0].1);
        let above = trend.iter().all(|&(_, c)| c > 2.0);
        let last = trend.last().expect("non-empty grid").1;
        let passed = decreasing
            && above
            && last < TREND_LAST_MAX
            && (last - TREND_LAST_FROZEN).abs() <= TREND_FROZEN_TOL;
        Ok((passed, format!("c(10) = {}, c(2560) = {}", text(trend[0].1), sig(last, 10))))
    })())
}

/// Deterministic (c, d) pairs on the feasible side, from Weyl sequences.
pub fn oracle_pairs(count: usize) -> cornerscan::Result<Vec<(f64, f64)>> {
    let (a, b) = (0.618_033_988_749_894_9, 0.414_213_562_373_095_1);
    (1..=count)
        .map(|k| {
            let u = (k as f64 * a).fract();
            let v = (k as f64 * b).fract();
            let d = 0.2 + 299.8 * u;
            let c = circle::solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP)?.c_opt + DEFAULT_TOL + 0.5 * v;
            Ok((c, d))
        })
        .collect()
}

pub fn oracle_equivalence() -> Check {
    check(8, "oracle equivalence", (|| {
        let mut worst: f64 = 0.0;
        let mut passed = true;
        for (c, d) in oracle_pairs(ORACLE_PAIRS)? {
            let seq = circle::simulate_sequence(c, d, DEFAULT_STEP_CAP)?;
            if !seq.reached_corner() {
                return Ok((false, format!("c = {c}, d = {d} did not reach the corner")));
            }
            let cert = evaluate_trajectory(&seq.to_trajectory()?);
            let last = cert.per_position.len() - 1;
            for p in &cert.per_position[..last] {
                worst = worst.max((p.ratio - c).abs());
            }
            passed &= cert.worst_ratio <= c + ORACLE_TOL;
        }
        passed &= worst <= ORACLE_TOL;
        Ok((passed, format!("{ORACLE_PAIRS} pairs, max |ratio - c| = {}", sig(worst, 3))))
    })())
}

pub fn pi_baseline() -> Check {
    check(9, "unit-chord baseline", (|| {
        let traj = circle::constant_step_trajectory(PI_BASELINE_D, 1.0)?;
        let worst = evaluate_trajectory(&traj).worst_ratio;
        let rel = (worst - PI).abs() / PI;
        Ok((rel <= PI_BASELINE_REL, format!("worst ratio {} ({} from pi)", text(worst), sig(rel, 3))))
    })())
}

pub fn run_all() -> Vec<Check> {
    vec![table1(), d40(), peak(), one_point(), gap(), lower_bound(), trend(), oracle_equivalence(), pi_baseline()]
}

pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "[{}] {:>2} {:<24} {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.detail
        ));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}
