use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A value fell outside the domain of an operation, e.g. normalizing a zero quaternion.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    /// Gauss-Jordan elimination met a pivot below the relative singularity threshold.
    #[error("singular matrix: pivot {pivot:.3e} in column {column} is below threshold {threshold:.3e}")]
    SingularMatrix {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("invalid memory set: {0}")]
    InvalidMemorySet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
