//! Backbone integration: turns modal curvature into a sampled 3D curve with
//! cumulative rotation frames.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modal_basis::{curvature_distribution, CoefficientSet};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Default number of arclength samples along the backbone.
pub const DEFAULT_SAMPLE_COUNT: usize = 101;

/// Tolerance for the rotation part of a [`Frame`].
pub const ORTHONORMAL_TOL: f64 = 1e-9;

/// Right-handed rotation about the x axis.
pub fn rot_x(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// Right-handed rotation about the y axis.
pub fn rot_y(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

/// Rigid transform: a rotation followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub rotation: Mat3,
    pub position: Vec3,
}

impl Frame {
    pub fn identity() -> Self {
        Self {
            rotation: Mat3::identity(),
            position: Vec3::zeros(),
        }
    }

    pub fn from_rotation(rotation: Mat3) -> Self {
        Self {
            rotation,
            position: Vec3::zeros(),
        }
    }

    /// Largest entry of `|RᵀR - I|`, combined with `|det R - 1|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.rotation.transpose() * self.rotation - Mat3::identity();
        let ortho = gram.abs().max();
        ortho.max((self.rotation.determinant() - 1.0).abs())
    }

    pub fn check(&self) -> Result<()> {
        let err = self.orthonormality_error();
        if err <= ORTHONORMAL_TOL && self.position.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonOrthonormalInput(err))
        }
    }

    /// `self * other` in SE(3).
    pub fn compose(&self, other: &Frame) -> Frame {
        Frame {
            rotation: self.rotation * other.rotation,
            position: self.position + self.rotation * other.position,
        }
    }
}

/// Applies a small motion `n(s)` to a backbone frame: `T'(s) = T(s) · n(s)`.
pub fn apply_motion_step(frame: &Frame, adjustment: &Frame) -> Result<Frame> {
    frame.check()?;
    adjustment.check()?;
    Ok(frame.compose(adjustment))
}

/// How sample positions are derived from the cumulative rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrationMode {
    /// Rotates the straight point `(0, 0, s_i)` by the cumulative rotation,
    /// exactly as the reference script does.
    #[default]
    PaperScript,
    /// Chains frame-local translations: `p_i = p_{i-1} + R_{i-1} (0, 0, ds)`.
    Incremental,
}

impl fmt::Display for IntegrationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegrationMode::PaperScript => "paper-script",
            IntegrationMode::Incremental => "incremental",
        })
    }
}

impl FromStr for IntegrationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-script" | "paper_script" => Ok(IntegrationMode::PaperScript),
            "incremental" => Ok(IntegrationMode::Incremental),
            other => Err(Error::Parse(format!("unknown integration mode `{other}`"))),
        }
    }
}

/// Geometric parameters shared by every backbone evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicParams {
    pub length: f64,
    pub scale: f64,
    pub sample_count: usize,
    pub mode: IntegrationMode,
}

impl Default for KinematicParams {
    fn default() -> Self {
        Self {
            length: 1.0,
            scale: 1.0,
            sample_count: DEFAULT_SAMPLE_COUNT,
            mode: IntegrationMode::PaperScript,
        }
    }
}

impl KinematicParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::InvalidLength(self.length));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidScale(self.scale));
        }
        if self.sample_count < 2 {
            return Err(Error::TooFewSamples(self.sample_count));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackboneSample {
    pub s: f64,
    pub point: Vec3,
    pub frame: Frame,
}

/// A discretized backbone, uniformly sampled in arclength.
#[derive(Debug, Clone, PartialEq)]
pub struct BackboneCurve {
    pub length: f64,
    pub scale: f64,
    pub mode: IntegrationMode,
    pub samples: Vec<BackboneSample>,
}

impl BackboneCurve {
    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn points(&self) -> impl Iterator<Item = &Vec3> + '_ {
        self.samples.iter().map(|s| &s.point)
    }
}

/// Arclength grid `s_i = i / (count - 1) * L`, computed the same way as the
/// reference listing so that `s_0 = 0` and `s_last = L` exactly.
pub fn arclength_grid(length: f64, sample_count: usize) -> Vec<f64> {
    let last = (sample_count - 1) as f64;
    (0..sample_count).map(|i| i as f64 / last * length).collect()
}

/// Integrates the modal curvature into a [`BackboneCurve`].
///
/// Each step composes `T <- T · Rx(θx) · Ry(θy)` with `θ = u(s_i) · ds`; the
/// order is fixed since the two rotations do not commute.
pub fn integrate_backbone(coeffs: &CoefficientSet, params: &KinematicParams) -> Result<BackboneCurve> {
    params.validate()?;
    let KinematicParams {
        length,
        scale,
        sample_count,
        mode,
    } = *params;

    let s = arclength_grid(length, sample_count);
    let ux = curvature_distribution(&coeffs.cx, &s, length)?;
    let uy = curvature_distribution(&coeffs.cy, &s, length)?;

    let mut samples = Vec::with_capacity(sample_count);
    samples.push(BackboneSample {
        s: 0.0,
        point: Vec3::zeros(),
        frame: Frame::identity(),
    });

    let mut rotation = Mat3::identity();
    let mut position = Vec3::zeros();
    for i in 1..sample_count {
        let ds = s[i] - s[i - 1];
        let step = rot_x(ux[i] * ds) * rot_y(uy[i] * ds);
        let point = match mode {
            IntegrationMode::PaperScript => {
                rotation *= step;
                (rotation * Vec3::new(0.0, 0.0, s[i])) * scale
            }
            IntegrationMode::Incremental => {
                position += rotation * Vec3::new(0.0, 0.0, ds * scale);
                rotation *= step;
                position
            }
        };
        samples.push(BackboneSample {
            s: s[i],
            point,
            frame: Frame { rotation, position: point },
        });
    }

    Ok(BackboneCurve {
        length,
        scale,
        mode,
        samples,
    })
}

/// Tip position and unit tip tangent (backward difference of the last two samples).
pub fn tcp(curve: &BackboneCurve) -> Result<(Vec3, Vec3)> {
    let n = curve.samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let tip = curve.samples[n - 1].point;
    let delta = tip - curve.samples[n - 2].point;
    let norm = delta.norm();
    if !(norm > 0.0) {
        return Err(Error::DegenerateTip);
    }
    Ok((tip, delta / norm))
}

/// Sample indices `round(i · (count - 1) / n)` for `i = 0..=n`, rounding halves up.
pub fn division_indices(sample_count: usize, divisions: usize) -> Result<Vec<usize>> {
    if divisions == 0 {
        return Err(Error::InvalidConfig("division count must be at least 1".into()));
    }
    if sample_count < 2 || divisions > sample_count - 1 {
        return Err(Error::DivisionTooFine {
            divisions,
            samples: sample_count,
        });
    }
    let span = sample_count - 1;
    Ok((0..=divisions)
        .map(|i| (2 * i * span + divisions) / (2 * divisions))
        .collect())
}

/// The `n + 1` division points used by the shape objective.
pub fn sample_divisions(curve: &BackboneCurve, divisions: usize) -> Result<Vec<Vec3>> {
    Ok(division_indices(curve.sample_count(), divisions)?
        .into_iter()
        .map(|i| curve.samples[i].point)
        .collect())
}
