use std::path::PathBuf;

use serde::Serialize;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A validation failure attached to one named configuration field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("row {row}, column {column}: {message}")]
    Parse { row: usize, column: usize, message: String },

    #[error("malformed table: {0}")]
    Structure(String),

    #[error("dataset needs at least 2 dimensions and 1 record: {0}")]
    Dimensionality(String),

    #[error("invalid axis permutation: {0}")]
    InvalidPermutation(String),

    #[error("axis index {index} out of range for {dims} dimensions")]
    AxisOutOfRange { index: usize, dims: usize },

    #[error("dataset has no cluster labels")]
    MissingLabels,

    #[error("invalid region: {0}")]
    Region(String),

    #[error("invalid configuration: {}", format_fields(.0))]
    InvalidConfig(Vec<FieldError>),

    #[error("preset: {0}")]
    Preset(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("encoding image: {0}")]
    Encode(String),
}

fn format_fields(fields: &[FieldError]) -> String {
    fields.iter().map(|f| format!("{}: {}", f.field, f.message)).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
