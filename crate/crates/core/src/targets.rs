//! Target ("ideal") configurations: synthetic generation and the on-disk format.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::backbone::{integrate_backbone, sample_divisions, tcp, IntegrationMode, KinematicParams, Vec3, DEFAULT_SAMPLE_COUNT};
use crate::error::{Error, Result};
use crate::modal_basis::CoefficientSet;

pub const TARGET_FORMAT_VERSION: u32 = 1;

/// Default number of backbone divisions compared by the shape objective.
pub const DEFAULT_DIVISIONS: usize = 8;

/// Norm deviation above which a stored TCP vector is rejected.
pub const TCP_REJECT_TOL: f64 = 1e-6;

/// Norm deviation above which a stored TCP vector is renormalized on load.
const TCP_RENORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetSource {
    Synthetic,
    Imported,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TargetConfiguration {
    pub division_points: Vec<Vec3>,
    pub tcp_vector: Vec3,
    pub n: usize,
    pub length: f64,
    pub scale: f64,
    pub source: TargetSource,
    pub ground_truth: Option<CoefficientSet>,
    pub noise_sigma: Option<f64>,
    pub seed: Option<u64>,
}

/// Parameters for [`synth_target`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions {
    pub length: f64,
    pub scale: f64,
    pub n: usize,
    pub noise_sigma: f64,
    pub seed: u64,
    pub sample_count: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            length: 1.0,
            scale: 1.0,
            n: DEFAULT_DIVISIONS,
            noise_sigma: 0.0,
            seed: 0,
            sample_count: DEFAULT_SAMPLE_COUNT,
        }
    }
}

/// Builds a target from known coefficients.
///
/// With `noise_sigma > 0` each division point receives independent Gaussian
/// offsets with standard deviation `noise_sigma · L · scale` per coordinate,
/// drawn from a generator seeded by `seed`. The TCP vector always comes from
/// the noiseless curve.
pub fn synth_target(coeffs: &CoefficientSet, opts: &SynthOptions) -> Result<TargetConfiguration> {
    if !(opts.noise_sigma >= 0.0 && opts.noise_sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!("noise sigma must be >= 0, got {}", opts.noise_sigma)));
    }
    let params = KinematicParams {
        length: opts.length,
        scale: opts.scale,
        sample_count: opts.sample_count,
        mode: IntegrationMode::PaperScript,
    };
    let curve = integrate_backbone(coeffs, &params)?;
    let mut division_points = sample_divisions(&curve, opts.n)?;
    let (_, tcp_vector) = tcp(&curve)?;

    if opts.noise_sigma > 0.0 {
        let std = opts.noise_sigma * opts.length * opts.scale;
        let normal = Normal::new(0.0, std).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for p in &mut division_points {
            for c in p.iter_mut() {
                *c += normal.sample(&mut rng);
            }
        }
    }

    Ok(TargetConfiguration {
        division_points,
        tcp_vector,
        n: opts.n,
        length: opts.length,
        scale: opts.scale,
        source: TargetSource::Synthetic,
        ground_truth: Some(coeffs.clone()),
        noise_sigma: Some(opts.noise_sigma),
        seed: Some(opts.seed),
    })
}

impl TargetConfiguration {
    /// Wraps externally produced points after validating them.
    pub fn imported(division_points: Vec<Vec3>, tcp_vector: Vec3, length: f64, scale: f64) -> Result<Self> {
        if division_points.len() < 2 {
            return Err(Error::Schema(format!(
                "need at least 2 division points, got {}",
                division_points.len()
            )));
        }
        let file = TargetFile {
            version: TARGET_FORMAT_VERSION,
            n: division_points.len() - 1,
            length,
            scale,
            division_points: division_points.iter().map(|p| [p.x, p.y, p.z]).collect(),
            tcp_vector: [tcp_vector.x, tcp_vector.y, tcp_vector.z],
            ground_truth: None,
            source: TargetSource::Imported,
            noise_sigma: None,
            seed: None,
        };
        file.into_target()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&TargetFile::from(self)).expect("target serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TargetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_target()
    }
}

pub fn save_target(target: &TargetConfiguration, path: &Path) -> Result<()> {
    fs::write(path, target.to_json()).map_err(|e| Error::io(path, e))
}

pub fn load_target(path: &Path) -> Result<TargetConfiguration> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    TargetConfiguration::from_json(&text)
}

/// Serialized layout of a target file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetFile {
    version: u32,
    n: usize,
    #[serde(rename = "L")]
    length: f64,
    scale: f64,
    division_points: Vec<[f64; 3]>,
    tcp_vector: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground_truth: Option<CoefficientSet>,
    source: TargetSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    noise_sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl From<&TargetConfiguration> for TargetFile {
    fn from(t: &TargetConfiguration) -> Self {
        TargetFile {
            version: TARGET_FORMAT_VERSION,
            n: t.n,
            length: t.length,
            scale: t.scale,
            division_points: t.division_points.iter().map(|p| [p.x, p.y, p.z]).collect(),
            tcp_vector: [t.tcp_vector.x, t.tcp_vector.y, t.tcp_vector.z],
            ground_truth: t.ground_truth.clone(),
            source: t.source,
            noise_sigma: t.noise_sigma,
            seed: t.seed,
        }
    }
}

impl TargetFile {
    fn into_target(self) -> Result<TargetConfiguration> {
        let schema = |msg: String| Err(Error::Schema(msg));
        if self.version != TARGET_FORMAT_VERSION {
            return schema(format!("unsupported version {}", self.version));
        }
        if self.n == 0 {
            return schema("n must be at least 1".into());
        }
        if self.division_points.len() != self.n + 1 {
            return schema(format!(
                "n = {} requires {} division points, found {}",
                self.n,
                self.n + 1,
                self.division_points.len()
            ));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return schema(format!("L must be positive, got {}", self.length));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return schema(format!("scale must be positive, got {}", self.scale));
        }
        if self.division_points.iter().flatten().any(|v| !v.is_finite()) {
            return schema("division points must be finite".into());
        }
        if let Some(sigma) = self.noise_sigma {
            if !(sigma >= 0.0 && sigma.is_finite()) {
                return schema(format!("noise_sigma must be >= 0, got {sigma}"));
            }
        }
        if self.ground_truth.is_some() && self.source != TargetSource::Synthetic {
            return schema("ground_truth is only allowed on synthetic targets".into());
        }
        if let Some(gt) = &self.ground_truth {
            if gt.cx.is_empty() || gt.cy.is_empty() {
                return schema("ground_truth needs coefficients on both axes".into());
            }
        }

        let mut tcp_vector = Vec3::from(self.tcp_vector);
        let norm = tcp_vector.norm();
        let deviation = (norm - 1.0).abs();
        if !(deviation <= TCP_REJECT_TOL) {
            return schema(format!("tcp_vector norm {norm} is not 1 within {TCP_REJECT_TOL:e}"));
        }
        if deviation > TCP_RENORM_TOL {
            log::warn!("tcp_vector norm {norm} renormalized to 1");
            tcp_vector /= norm;
        }

        Ok(TargetConfiguration {
            division_points: self.division_points.into_iter().map(Vec3::from).collect(),
            tcp_vector,
            n: self.n,
            length: self.length,
            scale: self.scale,
            source: self.source,
            ground_truth: self.ground_truth,
            noise_sigma: self.noise_sigma,
            seed: self.seed,
        })
    }
}
