use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the modeling, objective and search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("backbone length must be positive and finite, got {0}")]
    InvalidLength(f64),
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("at least 2 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("tip tangent is undefined: the last two samples coincide")]
    DegenerateTip,
    #[error("cannot take {divisions} divisions of a curve with {samples} samples")]
    DivisionTooFine { divisions: usize, samples: usize },
    #[error("frame rotation is not orthonormal (deviation {0:e})")]
    NonOrthonormalInput(f64),
    #[error("point lists differ in length: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("vector is not unit length (norm {0})")]
    NonUnitInput(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("individual {0} has not been evaluated")]
    UnevaluatedIndividual(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for filesystem failures, false for validation problems.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
