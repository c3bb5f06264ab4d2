//! Numeric witnesses for the lower bound of 2 and for the circle strategy
//! approaching it as the corner distance grows.
//!
//! Nothing here is a proof; every report carries the parameters and the
//! sequence it was computed from so the checks can be rerun.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::circle::{self, StepSequence, DEFAULT_STEP_CAP};
use crate::{Error, Result};

/// Slack on the per-step bound `x_i <= (1 - delta)^i`.
pub const BOUND_SLACK: f64 = 1e-12;
/// Largest corner distance tried by the asymptotic witness search.
pub const DEFAULT_D_CAP: f64 = 1e7;
/// Step count the glide check needs before it applies.
pub const DEFAULT_GLIDE_START: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub delta: f64,
    pub steps: Vec<f64>,
    /// One-based step indices with `x_i > (1 - delta)^i`.
    pub bound_violations: Vec<usize>,
    pub total_distance: f64,
    pub distance_bound: f64,
    /// False when the step cap stopped the recursion first.
    pub collapsed: bool,
}

impl LowerBoundReport {
    pub fn holds(&self) -> bool {
        self.bound_violations.is_empty() && self.total_distance < self.distance_bound
    }
}

/// Runs the pessimistic recursion for a strategy claiming ratio `2 - delta`.
///
/// Replacing each sight-line distance by the path length so far can only
/// lengthen the steps, giving `x_{i+1} = (1 - delta)(1 + sum_{j<=i} x_j) - i`.
/// The recursion runs until a step is nonpositive.
pub fn lower_bound_experiment(delta: f64, step_cap: usize) -> Result<LowerBoundReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let shrink = 1.0 - delta;
    let mut steps = Vec::new();
    let mut travelled = 0.0;
    let mut collapsed = false;
    while steps.len() < step_cap {
        let i = steps.len() as f64;
        let x = shrink * (1.0 + travelled) - i;
        if x <= 0.0 {
            collapsed = true;
            break;
        }
        steps.push(x);
        travelled += x;
    }
    let bound_violations = steps
        .iter()
        .enumerate()
        .filter(|(k, &x)| x > shrink.powi(*k as i32 + 1) + BOUND_SLACK)
        .map(|(k, _)| k + 1)
        .collect();
    Ok(LowerBoundReport {
        delta,
        total_distance: steps.iter().sum(),
        steps,
        bound_violations,
        distance_bound: 1.0 / delta,
        collapsed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessStatus {
    Found,
    NotFoundBelowCap,
}

/// Circle sequence for ratio `2 + epsilon` at the first tried distance
/// where the first `N` steps grow geometrically and the corner is reached.
///
/// The step checks are methods so they always reflect `sequence`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub epsilon: f64,
    pub n: usize,
    pub d_used: f64,
    pub status: WitnessStatus,
    pub sequence: StepSequence,
}

impl AsymptoticReport {
    fn prefix_len(&self) -> usize {
        self.n.min(self.sequence.steps.len())
    }

    /// `x_k >= 1 + (2^k - 1) epsilon` for `k <= min(N, len)`.
    pub fn liftoff_ok(&self) -> bool {
        liftoff_holds(&self.sequence, self.epsilon, self.n)
    }

    /// Mean of the first `min(N, len)` steps is at least 5.
    pub fn average_ok(&self) -> bool {
        let steps = self.sequence.allowed_steps();
        let k = self.prefix_len();
        k > 0 && steps[..k].iter().sum::<f64>() / k as f64 >= 5.0
    }

    /// Every step from index `N` on is at least 5.
    pub fn glide_ok(&self) -> bool {
        let steps = self.sequence.allowed_steps();
        steps.iter().skip(self.n.saturating_sub(1)).all(|&x| x >= 5.0)
    }

    pub fn reached(&self) -> bool {
        self.sequence.reached_corner()
    }

    pub fn summary(&self) -> AsymptoticSummary {
        AsymptoticSummary {
            epsilon: self.epsilon,
            n: self.n,
            d_used: self.d_used,
            status: self.status,
            steps_taken: self.sequence.steps.len(),
            liftoff_ok: self.liftoff_ok(),
            average_ok: self.average_ok(),
            glide_ok: self.glide_ok(),
            reached: self.reached(),
        }
    }
}

/// Flattened view of an [`AsymptoticReport`] for serialisation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticSummary {
    pub epsilon: f64,
    pub n: usize,
    pub d_used: f64,
    pub status: WitnessStatus,
    pub steps_taken: usize,
    pub liftoff_ok: bool,
    pub average_ok: bool,
    pub glide_ok: bool,
    pub reached: bool,
}

fn liftoff_holds(seq: &StepSequence, epsilon: f64, n: usize) -> bool {
    seq.allowed_steps()
        .iter()
        .take(n)
        .enumerate()
        .all(|(k, &x)| x >= 1.0 + (2f64.powi(k as i32 + 1) - 1.0) * epsilon - BOUND_SLACK)
}

pub fn asymptotic_witness(epsilon: f64, n: usize) -> Result<AsymptoticReport> {
    asymptotic_witness_with_cap(epsilon, n, DEFAULT_D_CAP)
}

/// Doubles `d` from `N` until the circle sequence for `2 + epsilon` takes at
/// least `N` steps, lifts off and reaches the corner, or `d` passes `d_cap`.
pub fn asymptotic_witness_with_cap(epsilon: f64, n: usize, d_cap: f64) -> Result<AsymptoticReport> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!("epsilon must be positive, got {epsilon}")));
    }
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let c = 2.0 + epsilon;
    let mut d = n as f64;
    loop {
        let sequence = circle::simulate_sequence(c, d, DEFAULT_STEP_CAP)?;
        let found = sequence.reached_corner() && sequence.steps.len() >= n && liftoff_holds(&sequence, epsilon, n);
        if found || d * 2.0 > d_cap {
            let status = if found { WitnessStatus::Found } else { WitnessStatus::NotFoundBelowCap };
            return Ok(AsymptoticReport { epsilon, n, d_used: d, status, sequence });
        }
        d *= 2.0;
    }
}

/// Length by which an arc exceeds its chord in a circle of diameter `d`.
pub fn arc_chord_gap(d: f64, arc_length: f64) -> Result<f64> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::domain(format!("diameter must be positive, got {d}")));
    }
    if !(arc_length >= 0.0 && arc_length <= FRAC_PI_2 * d) {
        return Err(Error::domain(format!(
            "arc length {arc_length} outside [0, pi d / 2] for d = {d}"
        )));
    }
    Ok(arc_length - d * (arc_length / d).sin())
}

/// Smallest diameter (to relative 1e-12) at which arcs up to `max_arc`
/// exceed their chords by at most `max_gap`.
pub fn diameter_for_gap(max_arc: f64, max_gap: f64) -> Result<f64> {
    if !(max_arc.is_finite() && max_arc > 0.0 && max_gap.is_finite() && max_gap > 0.0) {
        return Err(Error::domain("arc bound and gap bound must be positive"));
    }
    let mut lo = max_arc / FRAC_PI_2;
    if arc_chord_gap(lo, max_arc)? <= max_gap {
        return Ok(lo);
    }
    let mut hi = 2.0 * lo;
    while arc_chord_gap(hi, max_arc)? > max_gap {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if arc_chord_gap(mid, max_arc)? > max_gap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Whether each allowed step `x_k` grows with `d` for ratio `2 + epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepGrowthObservation {
    pub epsilon: f64,
    pub ds: Vec<f64>,
    /// `(k, d_small, d_large)` where `x_k` shrank between the two distances.
    pub decreases: Vec<(usize, f64, f64)>,
}

impl StepGrowthObservation {
    pub fn holds(&self) -> bool {
        self.decreases.is_empty()
    }
}

/// Compares the first `n_steps` allowed steps on consecutive grid points.
/// Reported, not asserted: nothing guarantees this ordering.
pub fn step_growth_observation(epsilon: f64, ds: &[f64], n_steps: usize) -> Result<StepGrowthObservation> {
    let c = 2.0 + epsilon;
    let seqs = ds
        .iter()
        .map(|&d| circle::simulate_sequence(c, d, DEFAULT_STEP_CAP).map(|s| s.allowed_steps()))
        .collect::<Result<Vec<_>>>()?;
    let mut decreases = Vec::new();
    for (w, dw) in seqs.windows(2).zip(ds.windows(2)) {
        let common = w[0].len().min(w[1].len()).min(n_steps);
        for k in 0..common {
            if w[1][k] < w[0][k] - BOUND_SLACK {
                decreases.push((k + 1, dw[0], dw[1]));
            }
        }
    }
    Ok(StepGrowthObservation { epsilon, ds: ds.to_vec(), decreases })
}

/// Optimal circle ratio on each distance of `ds`.
pub fn ratio_trend(ds: &[f64]) -> Result<Vec<(f64, f64)>> {
    ds.iter()
        .map(|&d| circle::solve_optimal_c(d, circle::DEFAULT_TOL, DEFAULT_STEP_CAP).map(|s| (d, s.c_opt)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lower_bound_half() {
        let r = lower_bound_experiment(0.5, 1000).unwrap();
        assert_eq!(r.steps, vec![0.5]);
        assert!(r.holds());
        assert!(r.collapsed);
        assert_eq!(r.distance_bound, 2.0);
    }

    #[test]
    fn lower_bound_near_one_collapses_after_first_step() {
        let r = lower_bound_experiment(0.999, 1000).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_abs_diff_eq!(r.steps[0], 0.001, epsilon = 1e-15);
    }

    #[test]
    fn lower_bound_domain() {
        assert!(lower_bound_experiment(0.0, 10).is_err());
        assert!(lower_bound_experiment(1.0, 10).is_err());
    }

    #[test]
    fn lower_bound_step_cap() {
        let r = lower_bound_experiment(0.01, 2).unwrap();
        assert_eq!(r.steps.len(), 2);
        assert!(!r.collapsed);
    }

    #[test]
    fn witness_trivial_liftoff() {
        let r = asymptotic_witness(0.01, 1).unwrap();
        assert_eq!(r.status, WitnessStatus::Found);
        assert_abs_diff_eq!(r.sequence.allowed_steps()[0], 1.01, epsilon = 1e-12);
        assert!(r.liftoff_ok() && r.reached());
    }

    #[test]
    fn witness_not_found_below_small_cap() {
        let r = asymptotic_witness_with_cap(0.1, 8, 8.0).unwrap();
        assert_eq!(r.status, WitnessStatus::NotFoundBelowCap);
        assert_eq!(r.d_used, 8.0);
    }

    #[test]
    fn witness_domain() {
        assert!(asymptotic_witness(0.0, 3).is_err());
        assert!(asymptotic_witness(0.1, 0).is_err());
    }

    #[test]
    fn arc_gap_basics() {
        assert_eq!(arc_chord_gap(3.0, 0.0).unwrap(), 0.0);
        assert!(arc_chord_gap(1.0, 2.0).is_err());
        assert!(arc_chord_gap(0.0, 0.0).is_err());
        assert!(arc_chord_gap(1.0, -0.1).is_err());
    }

    #[test]
    fn arc_gap_monotone_in_arc() {
        let d = 5.0;
        let gaps: Vec<f64> = (0..=100).map(|k| arc_chord_gap(d, FRAC_PI_2 * d * k as f64 / 100.0).unwrap()).collect();
        assert!(gaps.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn diameter_for_gap_meets_bound() {
        let d0 = diameter_for_gap(10.0, 1e-4).unwrap();
        assert!(arc_chord_gap(d0, 10.0).unwrap() <= 1e-4);
        assert!(arc_chord_gap(d0 * (1.0 - 1e-6), 10.0).unwrap() > 1e-4);
    }
}
