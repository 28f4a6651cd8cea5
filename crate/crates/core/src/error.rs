use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong between reading a file and emitting labels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}, column {column}: value is not finite")]
    NonFinite { line: usize, column: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset has {n} points, more than the configured cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("dataset has {n} point(s); at least 2 are needed to search for neighbors")]
    Degenerate { n: usize },

    #[error("requested {requested} clusters but only {available} sub-clusters were found")]
    InfeasibleTarget { requested: usize, available: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("expected {expected}-dimensional data, got {actual} dimensions")]
    Dimension { expected: usize, actual: usize },

    #[error("density similarity is undefined: both sub-clusters have zero mean density")]
    UndefinedSimilarity,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Short, stable identifier used in machine-readable CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::NonFinite { .. } => "non-finite",
            Error::EmptyDataset => "empty-dataset",
            Error::TooLarge { .. } => "too-large",
            Error::Degenerate { .. } => "degenerate",
            Error::InfeasibleTarget { .. } => "infeasible-target",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::Dimension { .. } => "dimension",
            Error::UndefinedSimilarity => "undefined-similarity",
            Error::InvalidParameter(_) => "invalid-parameter",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
