//! Geometry file written by `simulate`: the target-file fields plus every
//! backbone sample with its frame.

use std::fs;
use std::path::Path;

use modalid_core::backbone::{division_indices, sample_divisions, tcp, BackboneCurve, Vec3};
use modalid_core::{CoefficientSet, IntegrationMode};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub version: u32,
    pub n: usize,
    #[serde(rename = "L")]
    pub length: f64,
    pub scale: f64,
    pub mode: IntegrationMode,
    pub coefficients: CoefficientSet,
    pub division_points: Vec<[f64; 3]>,
    pub tcp_vector: [f64; 3],
    pub tip: [f64; 3],
    pub s: Vec<f64>,
    pub points: Vec<[f64; 3]>,
    /// Row-major rotation of each sample frame.
    pub frames: Vec<[[f64; 3]; 3]>,
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl GeometryFile {
    pub fn from_curve(curve: &BackboneCurve, coefficients: &CoefficientSet, n: usize) -> CliResult<Self> {
        let divisions = sample_divisions(curve, n)?;
        let (tip, tangent) = tcp(curve)?;
        Ok(Self {
            version: 1,
            n,
            length: curve.length,
            scale: curve.scale,
            mode: curve.mode,
            coefficients: coefficients.clone(),
            division_points: divisions.iter().map(arr).collect(),
            tcp_vector: arr(&tangent),
            tip: arr(&tip),
            s: curve.samples.iter().map(|s| s.s).collect(),
            points: curve.samples.iter().map(|s| arr(&s.point)).collect(),
            frames: curve
                .samples
                .iter()
                .map(|s| {
                    let r = &s.frame.rotation;
                    [
                        [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
                        [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
                        [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
                    ]
                })
                .collect(),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let g: GeometryFile = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("parse error in {}: {e}", path.display())))?;
        if g.points.len() < 2 {
            return Err(CliError::validation("geometry file needs at least 2 points"));
        }
        Ok(g)
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("geometry serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    /// Division points for an arbitrary division count, taken from the full sample list.
    pub fn divisions(&self, n: usize) -> CliResult<Vec<Vec3>> {
        Ok(division_indices(self.points.len(), n)?
            .into_iter()
            .map(|i| Vec3::from(self.points[i]))
            .collect())
    }

    pub fn tangent(&self) -> CliResult<Vec3> {
        let k = self.points.len();
        let d = Vec3::from(self.points[k - 1]) - Vec3::from(self.points[k - 2]);
        let norm = d.norm();
        if !(norm > 0.0) {
            return Err(modalid_core::Error::DegenerateTip.into());
        }
        Ok(d / norm)
    }
}
