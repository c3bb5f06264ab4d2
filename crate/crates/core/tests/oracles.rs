//! Checks against independently computed values.
//!
//! The circle oracle below works in Cartesian coordinates with central angles
//! of the semicircle and cross-product sight-line distances, sharing no code
//! with the library's polar recursion.

use approx::assert_abs_diff_eq;
use cornerscan::bounds::lower_bound_experiment;
use cornerscan::circle::{self, DEFAULT_STEP_CAP, DEFAULT_TOL};
use cornerscan::geometry::{evaluate_trajectory, ScanPoint, SearchInstance, Trajectory};
use cornerscan::global::{self, optimize_from_starts, random_starts};

/// Does the circle strategy with ratio `c` reach the corner at distance `d`?
fn oracle_reaches(c: f64, d: f64) -> bool {
    let radius = d / 2.0;
    let at = |psi: f64| (radius + radius * psi.cos(), radius * psi.sin());
    let mut psi = 0.0_f64;
    let mut spent = 0.0;
    let mut scans = 0.0;
    for _ in 0..100_000 {
        let (px, py) = at(psi);
        let sight = if psi == 0.0 { 0.0 } else { d * py / px.hypot(py) };
        let x = c * (1.0 + sight) - (scans + 1.0) - spent;
        if x <= 0.0 {
            return false;
        }
        if x >= px.hypot(py) {
            return true;
        }
        psi += 2.0 * (x / d).asin();
        spent += x;
        scans += 1.0;
    }
    false
}

fn oracle_c_opt(d: f64) -> f64 {
    let (mut lo, mut hi) = (1.0, 1.0 + std::f64::consts::PI);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if oracle_reaches(mid, d) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Optimal circle ratios computed offline with an independent script
/// (bisection to 1e-12).
const FROZEN_C_OPT: [(f64, f64); 9] = [
    (1.0, 1.839_286_755_214_315_7),
    (4.0, 2.156_569_377_419_073),
    (4.4, 2.168_516_461_220_924),
    (10.0, 2.092_874_692_524_067_5),
    (40.0, 2.001_525_539_549_466_4),
    (100.0, 2.000_201_207_935_738_5),
    (160.0, 2.000_078_307_150_714),
    (640.0, 2.000_004_883_519_468),
    (2560.0, 2.000_000_305_178_761_4),
];

#[test]
fn circle_solver_matches_frozen_values() {
    for (d, expected) in FROZEN_C_OPT {
        let sol = circle::solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP).unwrap();
        assert_abs_diff_eq!(sol.c_opt, expected, epsilon = 2e-9);
    }
}

#[test]
fn circle_solver_matches_cartesian_oracle() {
    for d in [0.3, 0.9, 1.7, 3.3, 5.5, 12.0, 75.0] {
        let sol = circle::solve_optimal_c(d, 1e-12, DEFAULT_STEP_CAP).unwrap();
        assert_abs_diff_eq!(sol.c_opt, oracle_c_opt(d), epsilon = 1e-10);
    }
}

#[test]
fn oracle_agrees_with_frozen_values() {
    for (d, expected) in FROZEN_C_OPT.iter().take(5) {
        assert_abs_diff_eq!(oracle_c_opt(*d), *expected, epsilon = 1e-10);
    }
}

#[test]
fn unit_chords_approach_pi() {
    let d: f64 = 1e4;
    let step = (1.0 / d).asin();
    let points: Vec<_> = (1..)
        .map(|k| k as f64 * step)
        .take_while(|&t| t < std::f64::consts::FRAC_PI_2)
        .map(|t| ScanPoint::on_semicircle(d, t))
        .collect();
    let traj = Trajectory::new(SearchInstance::new(d).unwrap(), points, true).unwrap();
    let cert = evaluate_trajectory(&traj);
    let rel = (cert.worst_ratio - std::f64::consts::PI).abs() / std::f64::consts::PI;
    assert!(rel < 0.02, "worst ratio {} is {rel} away from pi", cert.worst_ratio);
}

/// Lower-bound recursion step counts and totals, computed offline.
#[test]
fn lower_bound_frozen_totals() {
    let frozen = [
        (0.01, 6, 4.819_950_588_800_999_5),
        (0.05, 4, 2.756_506_25),
        (0.1, 3, 1.959),
        (0.25, 2, 1.0625),
        (0.5, 1, 0.5),
    ];
    for (delta, len, total) in frozen {
        let r = lower_bound_experiment(delta, 10_000).unwrap();
        assert_eq!(r.steps.len(), len, "delta = {delta}");
        assert_abs_diff_eq!(r.total_distance, total, epsilon = 1e-12);
        assert!(r.total_distance < 1.0 / delta);
    }
}

/// One free point at `d = 1`: the ratio has the closed form
/// `max(1 + |AP|, (2 + |AP| + |PB|) / (1 + sin theta))`.
fn one_point_ratio(theta: f64, r: f64) -> f64 {
    let (px, py) = (r * theta.cos(), r * theta.sin());
    let ap = (px - 1.0).hypot(py);
    f64::max(1.0 + ap, (2.0 + ap + r) / (1.0 + theta.sin()))
}

#[test]
fn one_point_optimum_beats_grid_search() {
    let mut grid_best = f64::INFINITY;
    let steps = 600;
    for i in 1..steps {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / steps as f64;
        for j in 1..steps {
            let r = 1.2 * j as f64 / steps as f64;
            grid_best = grid_best.min(one_point_ratio(theta, r));
        }
    }
    let opt = global::global_optimize(1.0, 1, 16).unwrap();
    assert!(opt.c_achieved <= grid_best + 1e-12);
    assert!(grid_best - opt.c_achieved < 5e-3, "grid {grid_best} vs optimiser {}", opt.c_achieved);
    let p = opt.points[0];
    assert_abs_diff_eq!(one_point_ratio(p.theta, p.r), opt.c_achieved, epsilon = 1e-12);
}

/// Reference optimum for `d = 1`, `n = 1` from an independent constrained
/// minimax solve: ratio 1.808201434 at theta = 0.873839, r = 0.386527.
#[test]
fn one_point_optimum_fixture() {
    let opt = global::global_optimize(1.0, 1, 16).unwrap();
    assert_abs_diff_eq!(opt.c_achieved, 1.808_201_434_077_994, epsilon = 1e-7);
    assert_abs_diff_eq!(opt.points[0].theta, 0.873_838_86, epsilon = 1e-4);
    assert_abs_diff_eq!(opt.points[0].r, 0.386_526_5, epsilon = 1e-4);
    assert!(opt.converged);
}

#[test]
fn one_point_optimum_equalises_ratios() {
    let opt = global::global_optimize(1.0, 1, 16).unwrap();
    let cert = evaluate_trajectory(&opt.trajectory().unwrap());
    assert_abs_diff_eq!(cert.worst_ratio, opt.c_achieved, epsilon = 1e-10);
    for p in &cert.per_position {
        assert_abs_diff_eq!(p.ratio, opt.c_achieved, epsilon = 1e-6);
    }
}

#[test]
fn free_placement_never_worse_than_circle() {
    for d in [0.8, 1.2, 2.0, 3.0] {
        let circle = circle::solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP).unwrap();
        let n = circle.scan_count();
        let opt = global::global_optimize(d, n, 4).unwrap();
        assert!(opt.c_achieved <= circle.c_opt + 1e-9, "d = {d}: {} > {}", opt.c_achieved, circle.c_opt);
    }
}

/// Three free points at `d = 4.4`; an independent SQP solve reaches 2.132147.
#[test]
fn three_points_near_peak() {
    let opt = global::global_optimize(4.4, 3, 16).unwrap();
    assert!((2.11..=2.1365).contains(&opt.c_achieved), "c = {}", opt.c_achieved);
    assert_abs_diff_eq!(opt.c_achieved, 2.132_147, epsilon = 1e-3);
}

#[test]
fn restart_order_does_not_matter() {
    let mut starts = vec![global::circle_seed(2.0, 2).unwrap()];
    starts.extend(random_starts(2.0, 2, 6, 11));
    let forward = optimize_from_starts(2.0, 2, &starts).unwrap();
    starts.reverse();
    let backward = optimize_from_starts(2.0, 2, &starts).unwrap();
    assert_abs_diff_eq!(forward.c_achieved, backward.c_achieved, epsilon = 1e-8);
}

#[test]
fn gap_examples() {
    let zero = global::gap_to_circle(0.5, None, 2, 0).unwrap();
    assert_eq!(zero.n, 0);
    assert_abs_diff_eq!(zero.gap, 0.0, epsilon = 1e-9);

    let far = global::gap_to_circle(40.0, None, 1, 0).unwrap();
    assert_eq!(far.n, 18);
    assert!(far.gap < 0.01 && far.gap > -1e-9, "{far:?}");
}

#[test]
fn large_distance_curve_matches_direct_bisection() {
    let curve = circle::ratio_curve(40.0, 200.0, 33).unwrap();
    for s in &curve {
        assert!(s.c_opt > 2.0);
        assert_abs_diff_eq!(s.c_opt, oracle_c_opt(s.d), epsilon = 2e-9);
    }
    assert!(curve.windows(2).all(|w| w[1].c_opt < w[0].c_opt));
}
