use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evidence count {0} outside supported range 1..={max}", max = crate::model::MAX_EVIDENCE)]
    EvidenceCount(usize),

    #[error(
        "parameter table shape mismatch: n={n} needs {expected} conditional entries, got {actual}"
    )]
    ShapeMismatch {
        n: usize,
        expected: usize,
        actual: usize,
    },

    #[error("parameter {index} = {value} is outside [0, 1]")]
    ParameterOutOfRange { index: usize, value: f64 },

    #[error("error range {0} outside [0, 2]")]
    ErrorRange(f64),

    #[error("invalid clamp bounds: lo={lo} must be < hi={hi}, both in [0, 1]")]
    ClampBounds { lo: f64, hi: f64 },

    #[error("invalid neutral band ({lower}, {upper}): need 0 < lower < 1 < upper")]
    NeutralBand { lower: f64, upper: f64 },

    #[error("invalid procedure parameter: {0}")]
    ProcedureParameter(String),

    #[error("evidential state has {actual} nodes, model has {expected}")]
    StateLength { expected: usize, actual: usize },

    #[error("posterior table covers {actual} states, expected {expected}")]
    MissingStates { expected: usize, actual: usize },

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("missing result cell: {0}")]
    MissingCell(String),

    #[error("malformed results file {path}: {message}")]
    Malformed { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by user-supplied configuration rather than the
    /// filesystem.
    pub fn is_config(&self) -> bool {
        !matches!(
            self,
            Error::Io { .. } | Error::Csv(_) | Error::Malformed { .. } | Error::MissingCell(_)
        )
    }
}
