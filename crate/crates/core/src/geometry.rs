//! Cost model and adversary oracle.
//!
//! Coordinates are polar about the corner `B`, which sits at the origin. The
//! start `A` is at angle 0 and radius `d`. A robot at angle `theta` sees
//! everything on the near side of the line through the corner at that angle,
//! so visibility can only grow with `theta`, which is capped at `pi/2`.
//!
//! Time is measured so that one scan costs 1 and travel speed is 1. The start
//! position gets its view for free; every later stop pays one scan. The
//! offline optimum walks straight to the sight line and pays one scan.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Time charged for one stop-and-scan.
pub const SCAN_COST: f64 = 1.0;

/// Whether the view from the start position is charged as a scan.
pub const START_SCAN_CHARGED: bool = false;

/// Absolute tolerance used by angle and radius comparisons.
pub const ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchInstance {
    d: f64,
}

impl SearchInstance {
    pub fn new(d: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::domain(format!("corner distance d must be positive and finite, got {d}")));
        }
        Ok(Self { d })
    }

    /// Distance from the start to the corner.
    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Perpendicular distance from the start to the sight line at `theta`.
pub fn line_distance(instance: SearchInstance, theta: f64) -> Result<f64> {
    if !(theta >= -ABS_TOL && theta <= FRAC_PI_2 + ABS_TOL) {
        return Err(Error::domain(format!("sight-line angle {theta} outside [0, pi/2]")));
    }
    Ok(instance.d * theta.clamp(0.0, FRAC_PI_2).sin())
}

/// A scan position in polar coordinates about the corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub theta: f64,
    pub r: f64,
}

impl ScanPoint {
    pub const CORNER: ScanPoint = ScanPoint { theta: FRAC_PI_2, r: 0.0 };

    pub fn new(theta: f64, r: f64) -> Self {
        Self { theta, r }
    }

    /// Point on the semicircle spanned by start and corner.
    pub fn on_semicircle(d: f64, theta: f64) -> Self {
        Self { theta, r: d * theta.cos() }
    }

    pub fn is_corner(&self) -> bool {
        self.r <= ABS_TOL
    }

    pub fn to_xy(self) -> (f64, f64) {
        (self.r * self.theta.cos(), self.r * self.theta.sin())
    }

    pub fn distance(self, other: ScanPoint) -> f64 {
        let (ax, ay) = self.to_xy();
        let (bx, by) = other.to_xy();
        (ax - bx).hypot(ay - by)
    }
}

/// Ordered scan positions after the start.
///
/// When the trajectory ends at the corner, the corner is stored explicitly as
/// the final point. A point at or beyond `pi/2` is replaced by the corner and
/// anything after the corner is dropped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    instance: SearchInstance,
    points: Vec<ScanPoint>,
    ends_at_corner: bool,
}

impl Trajectory {
    pub fn new(instance: SearchInstance, points: Vec<ScanPoint>, ends_at_corner: bool) -> Result<Self> {
        let mut kept = Vec::with_capacity(points.len() + 1);
        let mut prev_theta = 0.0;
        let mut reached = false;
        for (i, p) in points.into_iter().enumerate() {
            if !(p.theta.is_finite() && p.r.is_finite()) {
                return Err(Error::InvalidTrajectory(format!("points[{i}] is not finite")));
            }
            if p.r < 0.0 {
                return Err(Error::InvalidTrajectory(format!("points[{i}].r = {} is negative", p.r)));
            }
            if p.is_corner() || p.theta >= FRAC_PI_2 - ABS_TOL {
                kept.push(ScanPoint::CORNER);
                reached = true;
                break;
            }
            if p.theta <= prev_theta {
                return Err(Error::InvalidTrajectory(format!(
                    "points[{i}].theta = {} does not exceed the previous angle {prev_theta}",
                    p.theta
                )));
            }
            prev_theta = p.theta;
            kept.push(p);
        }
        if ends_at_corner && !reached {
            kept.push(ScanPoint::CORNER);
            reached = true;
        }
        Ok(Self { instance, points: kept, ends_at_corner: reached })
    }

    /// Walk straight from the start to the corner and scan once there.
    pub fn direct(instance: SearchInstance) -> Self {
        Self { instance, points: vec![ScanPoint::CORNER], ends_at_corner: true }
    }

    pub fn instance(&self) -> SearchInstance {
        self.instance
    }

    /// Scan positions after the start, including the corner if reached.
    pub fn points(&self) -> &[ScanPoint] {
        &self.points
    }

    /// Scan positions strictly between start and corner.
    pub fn intermediate_points(&self) -> &[ScanPoint] {
        if self.ends_at_corner {
            &self.points[..self.points.len() - 1]
        } else {
            &self.points
        }
    }

    pub fn ends_at_corner(&self) -> bool {
        self.ends_at_corner
    }

    pub fn start(&self) -> ScanPoint {
        ScanPoint::new(0.0, self.instance.d)
    }

    /// Euclidean leg lengths, start first.
    pub fn leg_lengths(&self) -> Vec<f64> {
        let mut prev = self.start();
        self.points
            .iter()
            .map(|&p| {
                let leg = prev.distance(p);
                prev = p;
                leg
            })
            .collect()
    }

    pub fn path_length(&self) -> f64 {
        self.leg_lengths().iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositionRatio {
    /// Scan position whose sight line the object hides just beyond.
    pub index: usize,
    pub robot_cost: f64,
    pub opt_cost: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCertificate {
    pub per_position: Vec<PositionRatio>,
    /// Infinite when the trajectory never reaches the corner.
    pub worst_ratio: f64,
    pub binding_index: usize,
    pub complete: bool,
}

/// Scores a trajectory against an adversary that hides the object just
/// beyond the sight line of some scan position.
///
/// The object beyond the line of position `i` is found at position `i + 1`,
/// after `i + 1` charged scans and the legs up to there. The offline optimum
/// is one scan plus the distance from the start to that sight line.
pub fn evaluate_trajectory(traj: &Trajectory) -> RatioCertificate {
    let legs = traj.leg_lengths();
    let mut per_position = Vec::with_capacity(legs.len());
    let mut travelled = 0.0;
    let mut theta = 0.0;
    for (i, (leg, p)) in legs.iter().zip(traj.points()).enumerate() {
        travelled += leg;
        let scans = (i + 1) as f64 * SCAN_COST + if START_SCAN_CHARGED { SCAN_COST } else { 0.0 };
        let robot_cost = scans + travelled;
        let opt_cost = SCAN_COST + traj.instance().d() * f64::sin(theta);
        per_position.push(PositionRatio { index: i, robot_cost, opt_cost, ratio: robot_cost / opt_cost });
        theta = p.theta;
    }

    if !traj.ends_at_corner() {
        return RatioCertificate {
            per_position,
            worst_ratio: f64::INFINITY,
            binding_index: traj.points().len(),
            complete: false,
        };
    }

    let (binding_index, worst_ratio) = per_position
        .iter()
        .map(|p| (p.index, p.ratio))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    RatioCertificate { per_position, worst_ratio, binding_index, complete: true }
}
