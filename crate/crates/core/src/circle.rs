//! The semicircle strategy.
//!
//! The robot only stops on the semicircle whose diameter joins the start and
//! the corner. A chord of length `x` is seen from the corner under the angle
//! `asin(x / d)`, and the sight-line distance of a point at cumulative angle
//! `phi` is `d sin(phi)`. Demanding that every scan position attains the
//! tested ratio `c` exactly gives a one-dimensional step recursion; `c` is
//! achievable iff the recursion reaches the corner.

use std::f64::consts::{FRAC_PI_2, PI};

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{ScanPoint, SearchInstance, Trajectory};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_STEP_CAP: usize = 100_000;
/// Bisection tolerance on `d` when locating scan-count thresholds.
pub const THRESHOLD_D_TOL: f64 = 1e-7;
/// Ratio tolerance used while classifying scan counts near a threshold.
///
/// Just past the zero-scan threshold the gain of an extra scan grows only
/// quadratically in the excess distance, so a loose ratio tolerance would
/// shift the threshold by roughly its square root.
pub const THRESHOLD_C_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceStatus {
    ReachedCorner,
    Collapsed,
    StepCapExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepSequence {
    pub c: f64,
    pub d: f64,
    /// Chord lengths. When the corner is reached the last entry is the
    /// actual leg to the corner, which may be shorter than the step the
    /// recursion allowed.
    pub steps: Vec<f64>,
    pub angles: Vec<f64>,
    pub status: SequenceStatus,
    pub cumulative_angle: f64,
    /// Step value produced by the recursion when it stopped: the allowed
    /// final step on success, the offending value on collapse.
    pub terminal_step: f64,
}

impl StepSequence {
    pub fn reached_corner(&self) -> bool {
        self.status == SequenceStatus::ReachedCorner
    }

    /// Step lengths as the recursion produced them, i.e. with the final leg
    /// replaced by the allowed step.
    pub fn allowed_steps(&self) -> Vec<f64> {
        let mut out = self.steps.clone();
        if self.reached_corner() {
            if let Some(last) = out.last_mut() {
                *last = self.terminal_step;
            }
        }
        out
    }

    /// Cumulative angles of the scan points, excluding the start.
    pub fn cumulative_angles(&self) -> Vec<f64> {
        self.angles
            .iter()
            .scan(0.0, |acc, a| {
                *acc += a;
                Some(*acc)
            })
            .collect()
    }

    /// Places the scan points on the semicircle.
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let instance = SearchInstance::new(self.d)?;
        let mut angles = self.cumulative_angles();
        if self.reached_corner() {
            angles.pop();
        }
        let points = angles.into_iter().map(|t| ScanPoint::on_semicircle(self.d, t)).collect();
        Trajectory::new(instance, points, self.reached_corner())
    }
}

/// Runs the step recursion for ratio `c` from `x_1 = c - 1`.
pub fn simulate_sequence(c: f64, d: f64, step_cap: usize) -> Result<StepSequence> {
    if !(c.is_finite() && c > 1.0) {
        return Err(Error::domain(format!("ratio c must exceed 1, got {c}")));
    }
    SearchInstance::new(d)?;
    if step_cap == 0 {
        return Err(Error::domain("step cap must be positive"));
    }

    let mut steps = Vec::new();
    let mut angles = Vec::new();
    let mut phi = 0.0_f64;
    let mut travelled = 0.0;
    let mut x = c - 1.0;

    let status = loop {
        assert!(!x.is_nan(), "step recursion produced NaN (c = {c}, d = {d})");
        if x <= 0.0 {
            break SequenceStatus::Collapsed;
        }
        let to_corner = d * phi.cos().max(0.0);
        if phi >= FRAC_PI_2 || x >= to_corner {
            steps.push(to_corner);
            angles.push((FRAC_PI_2 - phi).max(0.0));
            phi = FRAC_PI_2;
            break SequenceStatus::ReachedCorner;
        }
        if x > d {
            break SequenceStatus::Collapsed;
        }
        if steps.len() >= step_cap {
            break SequenceStatus::StepCapExceeded;
        }
        let angle = (x / d).asin();
        steps.push(x);
        angles.push(angle);
        phi += angle;
        travelled += x;
        let scans = steps.len() as f64 + 1.0;
        x = c * (1.0 + d * phi.sin()) - scans - travelled;
    };

    Ok(StepSequence { c, d, steps, angles, status, cumulative_angle: phi, terminal_step: x })
}

/// Semicircle trajectory with every chord of length `step`, finishing with a
/// shorter leg into the corner.
pub fn constant_step_trajectory(d: f64, step: f64) -> Result<Trajectory> {
    let instance = SearchInstance::new(d)?;
    if !(step > 0.0 && step <= d) {
        return Err(Error::domain(format!("chord length must lie in (0, d], got {step}")));
    }
    let angle = (step / d).asin();
    let points = (1..)
        .map(|k| k as f64 * angle)
        .take_while(|&t| t < FRAC_PI_2)
        .map(|t| ScanPoint::on_semicircle(d, t))
        .collect();
    Trajectory::new(instance, points, true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleSolution {
    pub c_opt: f64,
    /// Simulated at `c_opt + tol`, on the feasible side.
    pub sequence: StepSequence,
}

impl CircleSolution {
    pub fn scan_count(&self) -> usize {
        self.sequence.steps.len() - 1
    }
}

fn feasible(c: f64, d: f64, step_cap: usize) -> Result<bool> {
    let seq = simulate_sequence(c, d, step_cap)?;
    if seq.status == SequenceStatus::StepCapExceeded {
        warn!("step cap {step_cap} hit at c = {c}, d = {d}; treating as infeasible");
    }
    Ok(seq.reached_corner())
}

/// Bisection for the smallest ratio whose sequence reaches the corner.
pub fn solve_optimal_c(d: f64, tol: f64, step_cap: usize) -> Result<CircleSolution> {
    SearchInstance::new(d)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut lo = 1.0 + tol;
    let mut hi = PI + 1.0;
    if !feasible(hi, d, step_cap)? {
        return Err(Error::internal(format!("upper bracket c = {hi} is infeasible at d = {d}")));
    }

    let c_opt = if feasible(lo, d, step_cap)? {
        lo
    } else {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if feasible(mid, d, step_cap)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let sequence = simulate_sequence(c_opt + tol, d, step_cap)?;
    if !sequence.reached_corner() {
        return Err(Error::internal(format!(
            "feasibility not monotone in c at d = {d}: c = {} fails above the bisection bracket",
            c_opt + tol
        )));
    }
    Ok(CircleSolution { c_opt, sequence })
}

/// Scan stops strictly between start and corner.
pub fn scan_count(sequence: &StepSequence) -> Result<usize> {
    if !sequence.reached_corner() {
        return Err(Error::domain(format!("sequence did not reach the corner ({:?})", sequence.status)));
    }
    Ok(sequence.steps.len() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub n_scans: usize,
    pub d_max: f64,
    pub c_at_d_max: f64,
}

fn optimal_scan_count(d: f64) -> Result<usize> {
    solve_optimal_c(d, THRESHOLD_C_TOL, DEFAULT_STEP_CAP).map(|s| s.scan_count())
}

/// Largest `d` whose optimal circle sequence uses exactly `n` intermediate scans.
pub fn find_threshold(n: usize, tol: f64) -> Result<ThresholdRow> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut lo = tol;
    if optimal_scan_count(lo)? > n {
        return Err(Error::internal(format!("more than {n} scans already at d = {lo}")));
    }
    let mut hi = lo;
    loop {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::internal(format!("no d below 1e9 needs more than {n} scans")));
        }
        if optimal_scan_count(hi)? > n {
            break;
        }
        lo = hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if optimal_scan_count(mid)? > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let c_at_d_max = solve_optimal_c(lo, THRESHOLD_C_TOL, DEFAULT_STEP_CAP)?.c_opt;
    Ok(ThresholdRow { n_scans: n, d_max: lo, c_at_d_max })
}

/// Threshold rows for `0..=max_scans` scans.
pub fn threshold_table(max_scans: usize, tol: f64) -> Result<Vec<ThresholdRow>> {
    let rows = (0..=max_scans)
        .into_par_iter()
        .map(|n| find_threshold(n, tol))
        .collect::<Result<Vec<_>>>()?;
    if rows.windows(2).any(|w| w[1].d_max <= w[0].d_max) {
        return Err(Error::internal("threshold distances are not strictly increasing"));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub d: f64,
    pub c_opt: f64,
    pub n_scans: usize,
    pub x1: f64,
}

/// Optimal ratio on `n_samples` evenly spaced distances, in ascending order.
pub fn ratio_curve(d_min: f64, d_max: f64, n_samples: usize) -> Result<Vec<CurveSample>> {
    if !(d_min.is_finite() && d_max.is_finite() && 0.0 < d_min && d_min < d_max) {
        return Err(Error::domain(format!("need 0 < d_min < d_max, got [{d_min}, {d_max}]")));
    }
    if n_samples < 2 {
        return Err(Error::domain("a curve needs at least two samples"));
    }
    let last = n_samples - 1;
    (0..n_samples)
        .into_par_iter()
        .map(|k| {
            let d = if k == last { d_max } else { d_min + (d_max - d_min) * k as f64 / last as f64 };
            let sol = solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP)?;
            Ok(CurveSample { d, c_opt: sol.c_opt, n_scans: sol.scan_count(), x1: sol.c_opt - 1.0 })
        })
        .collect()
}
