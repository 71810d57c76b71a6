//! Modal backbone kinematics for continuum robots and multi-objective
//! identification of the Chebyshev curvature coefficients.
//!
//! The pipeline is: [`modal_basis`] turns coefficients into curvature,
//! [`backbone`] integrates curvature into a sampled curve, [`objectives`]
//! scores a curve against a [`targets::TargetConfiguration`], and
//! [`evolution`] searches the coefficient space with NSGA-II. [`report`]
//! writes the run history as CSV and SVG.

pub mod backbone;
pub mod error;
pub mod evolution;
pub mod format;
pub mod modal_basis;
pub mod objectives;
pub mod report;
pub mod targets;

pub use backbone::{
    apply_motion_step, integrate_backbone, sample_divisions, tcp, BackboneCurve, BackboneSample, Frame,
    IntegrationMode, KinematicParams, Mat3, Vec3,
};
pub use error::{Error, Result};
pub use evolution::{run, run_parallel, EAConfig, GenerationStats, Genome, Individual, RunResult};
pub use modal_basis::{chebyshev_eval, curvature_distribution, CoefficientSet};
pub use objectives::{evaluate, mse_shape, mse_tcp, EvalSettings, FitnessPair};
pub use report::ReportBundle;
pub use targets::{load_target, save_target, synth_target, SynthOptions, TargetConfiguration, TargetSource};
