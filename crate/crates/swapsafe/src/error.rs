use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = AppError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{what}: {source}")]
    Json {
        what: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error("bad record address {0:?}: expected N, row:N, idx:a,b,.. or a label tuple")]
    BadAddress(String),
    #[error("{0}")]
    Usage(String),

    #[error("no records")]
    NoRecords,
    #[error("row {row} (line {line}): malformed field data: {message}")]
    Csv {
        row: usize,
        line: u64,
        message: String,
    },
    #[error("row {row} (line {line}): expected {expected} fields, found {found}")]
    Arity {
        row: usize,
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("row {row} (line {line}): unknown category {label:?} for variable {var:?}")]
    UnknownLabel {
        row: usize,
        line: u64,
        var: String,
        label: String,
    },
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] swapsafe_core::Error),
}

impl AppError {
    /// Exit status: 2 for usage and configuration problems, 3 for bad data.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_)
            | AppError::BadAddress(_)
            | AppError::Usage(_)
            | AppError::Json { .. } => 2,
            AppError::Io { .. } => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }
}
