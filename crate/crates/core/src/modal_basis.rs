//! Chebyshev basis and the modal curvature distribution along the backbone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of modal coefficients per bending axis in the default layout.
pub const COEFFS_PER_AXIS: usize = 3;

/// Default per-gene coefficient bounds.
pub const DEFAULT_BOUNDS: (f64, f64) = (-2.0, 2.0);

/// Evaluates `T_0(x) ..= T_max_degree(x)` by the three-term recurrence.
///
/// `x` outside `[-1, 1]` is accepted; the values then grow without bound.
pub fn chebyshev_eval(max_degree: usize, x: f64) -> Vec<f64> {
    let mut t = Vec::with_capacity(max_degree + 1);
    t.push(1.0);
    if max_degree > 0 {
        t.push(x);
    }
    for i in 2..=max_degree {
        let next = 2.0 * x * t[i - 1] - t[i - 2];
        t.push(next);
    }
    t
}

/// Maps arclength `s` in `[0, length]` onto the Chebyshev domain `[-1, 1]`.
#[inline]
pub fn remap(s: f64, length: f64) -> f64 {
    2.0 * s / length - 1.0
}

/// Curvature `Σ c_i T_i(2s/L - 1)` at each arclength sample.
pub fn curvature_distribution(coeffs: &[f64], s_samples: &[f64], length: f64) -> Result<Vec<f64>> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidLength(length));
    }
    let degree = coeffs.len() - 1;
    Ok(s_samples
        .iter()
        .map(|&s| {
            let t = chebyshev_eval(degree, remap(s, length));
            coeffs.iter().zip(&t).map(|(c, t)| c * t).sum()
        })
        .collect())
}

/// Modal coefficients for the two bending channels.
///
/// `cx` drives rotation about the local x axis, `cy` about the local y axis.
/// Entry `i` weights the degree-`i` Chebyshev polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub cx: Vec<f64>,
    pub cy: Vec<f64>,
}

impl CoefficientSet {
    pub fn new(cx: Vec<f64>, cy: Vec<f64>) -> Result<Self> {
        if cx.is_empty() || cy.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        if cx.iter().chain(&cy).any(|c| !c.is_finite()) {
            return Err(Error::InvalidConfig("coefficients must be finite".into()));
        }
        Ok(Self { cx, cy })
    }

    /// All-zero set in the default 3 + 3 layout (a straight backbone).
    pub fn zeros() -> Self {
        Self {
            cx: vec![0.0; COEFFS_PER_AXIS],
            cy: vec![0.0; COEFFS_PER_AXIS],
        }
    }

    /// Splits a flattened `[cx0, cx1, cx2, cy0, cy1, cy2]` genome.
    pub fn from_genome(genome: &[f64; 2 * COEFFS_PER_AXIS]) -> Self {
        Self {
            cx: genome[..COEFFS_PER_AXIS].to_vec(),
            cy: genome[COEFFS_PER_AXIS..].to_vec(),
        }
    }

    /// Flattens back into genome order. Fails unless the set uses the 3 + 3 layout.
    pub fn to_genome(&self) -> Result<[f64; 2 * COEFFS_PER_AXIS]> {
        if self.cx.len() != COEFFS_PER_AXIS || self.cy.len() != COEFFS_PER_AXIS {
            return Err(Error::InvalidConfig(format!(
                "expected {COEFFS_PER_AXIS} coefficients per axis, got {} and {}",
                self.cx.len(),
                self.cy.len()
            )));
        }
        let mut g = [0.0; 2 * COEFFS_PER_AXIS];
        g[..COEFFS_PER_AXIS].copy_from_slice(&self.cx);
        g[COEFFS_PER_AXIS..].copy_from_slice(&self.cy);
        Ok(g)
    }

    /// Checks every coefficient against the inclusive range `[lo, hi]`.
    pub fn check_bounds(&self, lo: f64, hi: f64) -> Result<()> {
        if !(lo < hi) {
            return Err(Error::InvalidConfig(format!("bounds [{lo}, {hi}] are empty")));
        }
        match self.cx.iter().chain(&self.cy).find(|c| **c < lo || **c > hi) {
            Some(c) => Err(Error::InvalidConfig(format!(
                "coefficient {c} lies outside [{lo}, {hi}]"
            ))),
            None => Ok(()),
        }
    }
}
