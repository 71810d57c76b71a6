//! The two fitness objectives: shape deviation over the division points and
//! deviation of the tip tangent (TCP vector).

use serde::{Deserialize, Serialize};

use crate::backbone::{integrate_backbone, sample_divisions, tcp, IntegrationMode, KinematicParams, Vec3, DEFAULT_SAMPLE_COUNT};
use crate::error::{Error, Result};
use crate::modal_basis::CoefficientSet;
use crate::targets::TargetConfiguration;

/// Allowed deviation from unit norm for TCP vectors passed to [`mse_tcp`].
pub const UNIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessPair {
    /// Shape deviation, length².
    pub mse1: f64,
    /// TCP tangent deviation, dimensionless, at most 4.
    pub mse2: f64,
}

impl FitnessPair {
    pub const ZERO: FitnessPair = FitnessPair { mse1: 0.0, mse2: 0.0 };

    pub fn as_array(&self) -> [f64; 2] {
        [self.mse1, self.mse2]
    }

    /// Pareto domination for minimization.
    pub fn dominates(&self, other: &FitnessPair) -> bool {
        self.mse1 <= other.mse1
            && self.mse2 <= other.mse2
            && (self.mse1 < other.mse1 || self.mse2 < other.mse2)
    }

    /// Scalar summary used only for reporting a single "best" individual.
    pub fn sum(&self) -> f64 {
        self.mse1 + self.mse2
    }
}

/// `(1/n) Σ_{i=0}^{n} |u_i - û_i|²` over the `n + 1` division points.
pub fn mse_shape(candidate: &[Vec3], target: &[Vec3], divisions: usize) -> Result<f64> {
    if divisions == 0 {
        return Err(Error::InvalidConfig("division count must be at least 1".into()));
    }
    for list in [candidate, target] {
        if list.len() != divisions + 1 {
            return Err(Error::LengthMismatch {
                expected: divisions + 1,
                actual: list.len(),
            });
        }
    }
    let total: f64 = candidate
        .iter()
        .zip(target)
        .map(|(u, t)| (u - t).norm_squared())
        .sum();
    Ok(total / divisions as f64)
}

/// `|v - v̂|²` between two unit TCP vectors.
pub fn mse_tcp(candidate: &Vec3, target: &Vec3) -> Result<f64> {
    for v in [candidate, target] {
        let norm = v.norm();
        if !((norm - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::NonUnitInput(norm));
        }
    }
    Ok((candidate - target).norm_squared())
}

/// Discretization used when a candidate is evaluated against a target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    pub sample_count: usize,
    pub mode: IntegrationMode,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            sample_count: DEFAULT_SAMPLE_COUNT,
            mode: IntegrationMode::PaperScript,
        }
    }
}

impl EvalSettings {
    pub fn kinematics(&self, target: &TargetConfiguration) -> KinematicParams {
        KinematicParams {
            length: target.length,
            scale: target.scale,
            sample_count: self.sample_count,
            mode: self.mode,
        }
    }
}

/// Scores a coefficient set against a target. Pure and deterministic.
pub fn evaluate(coeffs: &CoefficientSet, target: &TargetConfiguration, settings: &EvalSettings) -> Result<FitnessPair> {
    let curve = integrate_backbone(coeffs, &settings.kinematics(target))?;
    let divisions = sample_divisions(&curve, target.n)?;
    let (_, tangent) = tcp(&curve)?;
    Ok(FitnessPair {
        mse1: mse_shape(&divisions, &target.division_points, target.n)?,
        mse2: mse_tcp(&tangent, &target.tcp_vector)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(n: usize, offset: Vec3) -> Vec<Vec3> {
        (0..=n).map(|i| Vec3::new(0.0, 0.0, i as f64 / n as f64) + offset).collect()
    }

    #[test]
    fn shape_examples() {
        let a = line(8, Vec3::zeros());
        assert_eq!(mse_shape(&a, &a, 8).unwrap(), 0.0);

        let c = [Vec3::zeros(), Vec3::new(0.0, 0.0, 1.0)];
        let t = [Vec3::zeros(), Vec3::new(0.0, 0.0, 2.0)];
        assert_eq!(mse_shape(&c, &t, 1).unwrap(), 1.0);

        let shifted = line(8, Vec3::new(0.1, 0.0, 0.0));
        assert!((mse_shape(&shifted, &a, 8).unwrap() - 0.01125).abs() < 1e-15);
    }

    #[test]
    fn shape_length_mismatch() {
        let a = line(8, Vec3::zeros());
        assert!(matches!(
            mse_shape(&a[..8], &a, 8),
            Err(Error::LengthMismatch { expected: 9, actual: 8 })
        ));
        assert!(matches!(mse_shape(&a, &a, 7), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn tcp_examples() {
        let z = Vec3::z();
        assert_eq!(mse_tcp(&z, &z).unwrap(), 0.0);
        assert_eq!(mse_tcp(&z, &-z).unwrap(), 4.0);
        assert!((mse_tcp(&z, &Vec3::y()).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(mse_tcp(&(z * 1.1), &z), Err(Error::NonUnitInput(_))));
    }

    #[test]
    fn domination() {
        let a = FitnessPair { mse1: 1.0, mse2: 1.0 };
        let b = FitnessPair { mse1: 2.0, mse2: 2.0 };
        let c = FitnessPair { mse1: 1.0, mse2: 2.0 };
        assert!(a.dominates(&b));
        assert!(a.dominates(&c));
        assert!(!b.dominates(&a));
        assert!(!a.dominates(&a));
    }

    fn arb_points(n: usize) -> impl Strategy<Value = Vec<Vec3>> {
        prop::collection::vec(prop::array::uniform3(-3.0f64..3.0), n + 1)
            .prop_map(|v| v.into_iter().map(Vec3::from).collect())
    }

    proptest! {
        #[test]
        fn shape_is_symmetric(a in arb_points(8), b in arb_points(8)) {
            prop_assert_eq!(mse_shape(&a, &b, 8).unwrap(), mse_shape(&b, &a, 8).unwrap());
        }

        #[test]
        fn translation_sensitivity(a in arb_points(8), t in prop::array::uniform3(-1.0f64..1.0)) {
            let t = Vec3::from(t);
            let moved: Vec<Vec3> = a.iter().map(|p| p + t).collect();
            let got = mse_shape(&moved, &a, 8).unwrap();
            let expected = 9.0 / 8.0 * t.norm_squared();
            prop_assert!((got - expected).abs() <= 1e-12 * (1.0 + expected));
        }

        #[test]
        fn zero_only_when_equal(a in arb_points(4), i in 0usize..5, d in 1e-6f64..1.0) {
            prop_assert_eq!(mse_shape(&a, &a, 4).unwrap(), 0.0);
            let mut b = a.clone();
            b[i].x += d;
            prop_assert!(mse_shape(&a, &b, 4).unwrap() > 0.0);
        }

        #[test]
        fn tcp_symmetric_and_bounded(u in prop::array::uniform3(-1.0f64..1.0), v in prop::array::uniform3(-1.0f64..1.0)) {
            let (u, v) = (Vec3::from(u), Vec3::from(v));
            prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
            let (u, v) = (u.normalize(), v.normalize());
            let ab = mse_tcp(&u, &v).unwrap();
            prop_assert_eq!(ab, mse_tcp(&v, &u).unwrap());
            prop_assert!((0.0..=4.0 + 1e-12).contains(&ab));
        }
    }
}
