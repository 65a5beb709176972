use thiserror::Error;

/// Errors produced by matrix construction, parsing, and the numeric pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A value violates a domain precondition (non-positive entry, d < 1, n too small, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Dimensions do not line up (wrong entry count, order mismatch, length mismatch).
    #[error("shape error: {0}")]
    Shape(String),

    /// Malformed matrix text. Line and column are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A full matrix failed validation at entry (i, j). Indices are 1-based.
    #[error("validation error at ({i}, {j}): {message}")]
    Validation { i: usize, j: usize, message: String },

    /// The eigensolver did not reach the residual threshold.
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    /// The random-index table has no entry for this order.
    #[error("no random-index entry for order {n}")]
    MissingRandomIndex { n: usize },

    /// An argument is out of range or otherwise unusable (bad index, empty input, ...).
    #[error("argument error: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
