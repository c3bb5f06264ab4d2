//! Free placement of a fixed number of intermediate scan points.
//!
//! Scan points may sit anywhere in the quarter plane; the objective is the
//! worst-case ratio reported by [`evaluate_trajectory`]. Angles are encoded
//! by stick-breaking (each point takes a logistic fraction of the angle still
//! left before `pi/2`) and radii by their logarithm, so every parameter
//! vector decodes to a valid monotone trajectory.

use std::f64::consts::FRAC_PI_2;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{self, DEFAULT_STEP_CAP, DEFAULT_TOL};
use crate::geometry::{evaluate_trajectory, ScanPoint, SearchInstance, Trajectory};
use crate::simplex::NelderMead;
use crate::Result;

pub const DEFAULT_SEED: u64 = 0;
/// Refinement stops once a simplex restart improves the ratio by less than this.
pub const CONVERGENCE_TOL: f64 = 1e-10;
const MAX_REFINEMENTS: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub d: f64,
    pub n: usize,
    /// Intermediate scan points; the corner follows implicitly.
    pub points: Vec<ScanPoint>,
    pub c_achieved: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl OptimizationResult {
    pub fn trajectory(&self) -> Result<Trajectory> {
        Trajectory::new(SearchInstance::new(self.d)?, self.points.clone(), true)
    }
}

fn sigmoid(s: f64) -> f64 {
    1.0 / (1.0 + (-s).exp())
}

fn decode(z: &[f64]) -> Vec<ScanPoint> {
    let n = z.len() / 2;
    let mut theta = 0.0;
    (0..n)
        .map(|k| {
            theta += (FRAC_PI_2 - theta) * sigmoid(z[k]);
            ScanPoint::new(theta, z[n + k].exp())
        })
        .collect()
}

fn encode(points: &[ScanPoint]) -> Vec<f64> {
    let mut z = Vec::with_capacity(2 * points.len());
    let mut prev = 0.0;
    for p in points {
        let frac = ((p.theta - prev) / (FRAC_PI_2 - prev)).clamp(1e-12, 1.0 - 1e-12);
        z.push((frac / (1.0 - frac)).ln());
        prev = p.theta;
    }
    z.extend(points.iter().map(|p| p.r.max(1e-300).ln()));
    z
}

fn worst_ratio(instance: SearchInstance, points: Vec<ScanPoint>) -> f64 {
    match Trajectory::new(instance, points, true) {
        Ok(t) => evaluate_trajectory(&t).worst_ratio,
        Err(_) => f64::INFINITY,
    }
}

struct Refined {
    points: Vec<ScanPoint>,
    c: f64,
    iterations: usize,
    converged: bool,
}

fn refine(instance: SearchInstance, start: &[ScanPoint]) -> Refined {
    let objective = |z: &[f64]| worst_ratio(instance, decode(z));
    let nm = NelderMead::default();
    let mut z = encode(start);
    let mut c = objective(&z);
    let mut iterations = 0;
    let mut converged = false;
    for round in 0..MAX_REFINEMENTS {
        let step = if round == 0 { 0.3 } else { 0.05 };
        let m = nm.minimize(objective, &z, step);
        iterations += m.iterations;
        let improvement = c - m.f;
        if m.f <= c {
            z = m.x;
            c = m.f;
        }
        if round > 0 && improvement < CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }
    let points = decode(&z);
    let c = worst_ratio(instance, points.clone());
    Refined { points, c, iterations, converged }
}

/// Starting placement derived from the circle strategy: its own points when it
/// uses exactly `n` scans, otherwise `n` equally spaced semicircle points.
pub fn circle_seed(d: f64, n: usize) -> Result<Vec<ScanPoint>> {
    let sol = circle::solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP)?;
    if sol.scan_count() == n {
        return Ok(sol.sequence.to_trajectory()?.intermediate_points().to_vec());
    }
    Ok((1..=n)
        .map(|k| ScanPoint::on_semicircle(d, FRAC_PI_2 * k as f64 / (n + 1) as f64))
        .collect())
}

/// `count` uniformly random monotone placements around the semicircle.
pub fn random_starts(d: f64, n: usize, count: usize, seed: u64) -> Vec<Vec<ScanPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut thetas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.02..FRAC_PI_2 - 0.02)).collect();
            thetas.sort_by(f64::total_cmp);
            thetas
                .into_iter()
                .map(|t| ScanPoint::new(t, d * t.cos() * rng.gen_range(0.5..1.2)))
                .collect()
        })
        .collect()
}

/// Refines every start and keeps the best result.
pub fn optimize_from_starts(d: f64, n: usize, starts: &[Vec<ScanPoint>]) -> Result<OptimizationResult> {
    let instance = SearchInstance::new(d)?;
    if n == 0 {
        let c = evaluate_trajectory(&Trajectory::direct(instance)).worst_ratio;
        return Ok(OptimizationResult { d, n, points: Vec::new(), c_achieved: c, iterations: 0, converged: true });
    }
    if starts.is_empty() {
        return Err(crate::Error::domain("need at least one starting placement"));
    }
    if let Some(bad) = starts.iter().position(|s| s.len() != n) {
        return Err(crate::Error::domain(format!("start {bad} does not have {n} points")));
    }
    let refined: Vec<Refined> = starts.par_iter().map(|s| refine(instance, s)).collect();
    let iterations = refined.iter().map(|r| r.iterations).sum();
    let best = refined
        .into_iter()
        .reduce(|a, b| if b.c < a.c { b } else { a })
        .expect("non-empty starts");
    Ok(OptimizationResult {
        d,
        n,
        points: best.points,
        c_achieved: best.c,
        iterations,
        converged: best.converged,
    })
}

pub fn global_optimize(d: f64, n: usize, restarts: usize) -> Result<OptimizationResult> {
    global_optimize_seeded(d, n, restarts, DEFAULT_SEED)
}

/// Multi-start simplex search seeded by the circle strategy and `restarts`
/// random placements.
pub fn global_optimize_seeded(d: f64, n: usize, restarts: usize, seed: u64) -> Result<OptimizationResult> {
    SearchInstance::new(d)?;
    if restarts == 0 {
        return Err(crate::Error::domain("restarts must be at least 1"));
    }
    if n > 3 {
        warn!("free placement of {n} scan points is slow and only locally optimal");
    }
    if n == 0 {
        return optimize_from_starts(d, 0, &[]);
    }
    let mut starts = vec![circle_seed(d, n)?];
    starts.extend(random_starts(d, n, restarts, seed));
    optimize_from_starts(d, n, &starts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub d: f64,
    pub n: usize,
    pub circle_c: f64,
    pub global_c: f64,
    /// `circle_c / global_c - 1`.
    pub gap: f64,
}

/// Relative excess of the circle strategy over free placement with the same
/// number of scans (or `n_override`).
pub fn gap_to_circle(d: f64, n_override: Option<usize>, restarts: usize, seed: u64) -> Result<GapReport> {
    let circle = circle::solve_optimal_c(d, DEFAULT_TOL, DEFAULT_STEP_CAP)?;
    let n = n_override.unwrap_or_else(|| circle.scan_count());
    let global = global_optimize_seeded(d, n, restarts, seed)?;
    Ok(GapReport {
        d,
        n,
        circle_c: circle.c_opt,
        global_c: global.c_achieved,
        gap: circle.c_opt / global.c_achieved - 1.0,
    })
}
