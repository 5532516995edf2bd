use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the cipher pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of domain: {name} = {value} (expected {expected})")]
    ParamDomain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("orbit diverged at step {step}: x = {x}")]
    OrbitDivergence { step: usize, x: f64 },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("bad PGM {field}: {detail}")]
    PgmFormat { field: &'static str, detail: String },

    #[error("unsupported image format: magic {0:?} (only binary P5 is supported)")]
    UnsupportedFormat(String),

    #[error("key file line {line}: {detail}")]
    KeyFile { line: usize, detail: String },

    #[error("key file is missing field `{0}`")]
    MissingField(&'static str),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
