//! Search configuration: a TOML file, then command-line overrides.

use std::fs;
use std::path::Path;

use modalid_core::EAConfig;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Every field optional; missing fields keep the defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub generation_size: Option<usize>,
    pub generation_count: Option<usize>,
    pub crossover_prob: Option<f64>,
    pub mutation_prob: Option<f64>,
    pub bounds: Option<Vec<[f64; 2]>>,
    pub sbx_eta: Option<f64>,
    pub mutation_eta: Option<f64>,
    pub seed: Option<u64>,
    pub sample_count: Option<usize>,
    pub n_divisions: Option<usize>,
}

/// Flag values that override the file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub generations: Option<usize>,
    pub generation_size: Option<usize>,
    pub crossover: Option<f64>,
    pub mutation: Option<f64>,
    pub bounds: Option<(f64, f64)>,
    pub samples: Option<usize>,
    pub n_divisions: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::validation(format!("config {}: {e}", path.display())))
    }
}

/// Builds the effective config. The division count falls back to the
/// target's when neither the file nor a flag sets it.
pub fn resolve(file: ConfigFile, flags: &Overrides, target_divisions: usize) -> CliResult<EAConfig> {
    let mut c = EAConfig::default();
    macro_rules! take {
        ($field:ident, $value:expr) => {
            if let Some(v) = $value {
                c.$field = v;
            }
        };
    }
    take!(generation_size, file.generation_size);
    take!(generation_count, file.generation_count);
    take!(crossover_prob, file.crossover_prob);
    take!(mutation_prob, file.mutation_prob);
    take!(bounds, file.bounds);
    take!(sbx_eta, file.sbx_eta);
    take!(mutation_eta, file.mutation_eta);
    take!(seed, file.seed);
    take!(sample_count, file.sample_count);
    c.n_divisions = file.n_divisions.unwrap_or(target_divisions);

    take!(seed, flags.seed);
    take!(generation_count, flags.generations);
    take!(generation_size, flags.generation_size);
    take!(crossover_prob, flags.crossover);
    take!(mutation_prob, flags.mutation);
    take!(sample_count, flags.samples);
    take!(n_divisions, flags.n_divisions);
    if let Some((lo, hi)) = flags.bounds {
        c.set_uniform_bounds(lo, hi);
    }
    c.validate()?;
    Ok(c)
}

/// TOML echo of the effective config, loadable with `--config`.
pub fn to_toml(config: &EAConfig) -> String {
    toml::to_string(config).expect("config serializes")
}
