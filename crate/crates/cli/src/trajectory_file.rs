//! On-disk trajectory document:
//!
//! ```json
//! {"d": 0.5, "points": [[theta, r], ...], "ends_at_corner": true}
//! ```
//!
//! Angles are radians about the corner, measured from the start direction.

use std::path::Path;

use cornerscan::{ScanPoint, SearchInstance, Trajectory};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryFile {
    pub d: f64,
    pub points: Vec<[f64; 2]>,
    pub ends_at_corner: bool,
}

impl TrajectoryFile {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        Self {
            d: traj.instance().d(),
            points: traj.points().iter().map(|p| [p.theta, p.r]).collect(),
            ends_at_corner: traj.ends_at_corner(),
        }
    }

    pub fn parse(src: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(src);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let e = e.into_inner();
            if path == "." {
                CliError::Domain(format!("malformed trajectory file: {e}"))
            } else {
                CliError::Domain(format!("malformed trajectory file: field `{path}`: {e}"))
            }
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Domain(format!("cannot read trajectory {}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn to_trajectory(&self) -> Result<Trajectory, CliError> {
        let instance = SearchInstance::new(self.d).map_err(|e| CliError::Domain(format!("field `d`: {e}")))?;
        let points = self.points.iter().map(|&[theta, r]| ScanPoint::new(theta, r)).collect();
        Trajectory::new(instance, points, self.ends_at_corner)
            .map_err(|e| CliError::Domain(format!("field `points`: {e}")))
    }
}
