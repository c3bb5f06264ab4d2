//! Online search for an object hidden behind a corner when every scan costs time.
//!
//! A robot starts at distance `d` from a convex corner. Each stop to scan the
//! surroundings costs one time unit and travel speed is one, so the cost of a
//! strategy is path length plus the number of charged scans. The crate offers:
//!
//! - [`geometry`]: the cost model and the adversary oracle that scores any
//!   trajectory by its worst-case competitive ratio.
//! - [`circle`]: the semicircle-inscribed strategy, its step recursion, the
//!   bisection for the optimal ratio, scan-count thresholds and ratio curves.
//! - [`bounds`]: executable lower-bound and asymptotic witnesses.
//! - [`global`]: free scan-point optimisation for small scan counts.

pub mod bounds;
pub mod circle;
mod error;
pub mod geometry;
pub mod global;
pub mod simplex;

pub use error::{Error, Result};
pub use geometry::{RatioCertificate, ScanPoint, SearchInstance, Trajectory};
