use serde::{Deserialize, Serialize};

use crate::backbone::DEFAULT_SAMPLE_COUNT;
use crate::error::{Error, Result};
use crate::modal_basis::DEFAULT_BOUNDS;
use crate::targets::DEFAULT_DIVISIONS;

use super::GENOME_LEN;

/// Settings for the multi-objective search. The defaults are 20 individuals
/// per generation, 10 generations, 90% crossover and 0.5% per-gene mutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EAConfig {
    pub generation_size: usize,
    pub generation_count: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    /// Inclusive `[lo, hi]` per gene, in genome order `cx0, cx1, cx2, cy0, cy1, cy2`.
    /// `lo == hi` pins a gene.
    pub bounds: Vec<[f64; 2]>,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
    pub seed: u64,
    pub sample_count: usize,
    pub n_divisions: usize,
}

impl Default for EAConfig {
    fn default() -> Self {
        Self {
            generation_size: 20,
            generation_count: 10,
            crossover_prob: 0.90,
            mutation_prob: 0.005,
            bounds: vec![[DEFAULT_BOUNDS.0, DEFAULT_BOUNDS.1]; GENOME_LEN],
            sbx_eta: 20.0,
            mutation_eta: 20.0,
            seed: 0,
            sample_count: DEFAULT_SAMPLE_COUNT,
            n_divisions: DEFAULT_DIVISIONS,
        }
    }
}

impl EAConfig {
    /// Same `[lo, hi]` for every gene.
    pub fn set_uniform_bounds(&mut self, lo: f64, hi: f64) {
        self.bounds = vec![[lo, hi]; GENOME_LEN];
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.generation_size < 4 || self.generation_size % 2 != 0 {
            return bad(format!("generation_size must be even and >= 4, got {}", self.generation_size));
        }
        if self.generation_count < 1 {
            return bad("generation_count must be >= 1".into());
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if self.bounds.len() != GENOME_LEN {
            return bad(format!("expected {GENOME_LEN} bound pairs, got {}", self.bounds.len()));
        }
        for (i, [lo, hi]) in self.bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("bounds for gene {i} are invalid: [{lo}, {hi}]"));
            }
        }
        for (name, eta) in [("sbx_eta", self.sbx_eta), ("mutation_eta", self.mutation_eta)] {
            if !(eta > 0.0 && eta.is_finite()) {
                return bad(format!("{name} must be positive, got {eta}"));
            }
        }
        if self.sample_count < 2 {
            return bad(format!("sample_count must be >= 2, got {}", self.sample_count));
        }
        if self.n_divisions < 1 || self.n_divisions > self.sample_count - 1 {
            return bad(format!(
                "n_divisions must lie in [1, {}], got {}",
                self.sample_count - 1,
                self.n_divisions
            ));
        }
        Ok(())
    }
}
