//! Error type shared by all numerical modules.

use std::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the fitting, MANOVA, and inference pipelines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Data length does not match the declared dimensions.
    InvalidLength { expected: usize, got: usize },
    /// A NaN or infinity was supplied where a finite real is required.
    NonFinite,
    /// Operand shapes are incompatible.
    DimensionMismatch {
        rows: (usize, usize),
        cols: (usize, usize),
    },
    /// A Cholesky pivot fell below tolerance: the matrix is not positive
    /// definite (or not numerically so).
    NotPositiveDefinite { pivot: usize },
    /// The response columns are linearly dependent after centering; `column`
    /// is the zero-based index of the first offending column.
    RankDeficient { column: usize },
    /// The predictor `x` is constant, so every variance-ratio quantity is
    /// undefined.
    DegenerateX,
    /// R² = 1 exactly: the F statistic is infinite and must not be computed.
    DegenerateFit,
    /// Fewer observations than the design requires (`n ≥ k + 2`).
    TooFewRows { n: usize, k: usize },
    /// A parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64 },
    /// A computed effect landed outside [0, 1] by more than the numerical
    /// slack; this signals a fault in the computation, not a legitimate
    /// result.
    EffectOutOfRange { value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLength { expected, got } => {
                write!(f, "data length mismatch: expected {expected}, got {got}")
            }
            Error::NonFinite => write!(f, "non-finite entry (NaN or infinity) rejected"),
            Error::DimensionMismatch { rows, cols } => write!(
                f,
                "dimension mismatch: {}×{} vs {}×{}",
                rows.0, cols.0, rows.1, cols.1
            ),
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
            Error::RankDeficient { column } => {
                write!(f, "design is rank deficient at column {column}")
            }
            Error::DegenerateX => write!(f, "predictor x is constant; effect is undefined"),
            Error::DegenerateFit => write!(f, "R² = 1: F statistic is infinite"),
            Error::TooFewRows { n, k } => {
                write!(f, "too few rows: n = {n} but k = {k} requires n ≥ {}", k + 2)
            }
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::EffectOutOfRange { value } => write!(
                f,
                "computed effect {value} lies outside [0, 1] beyond numerical slack"
            ),
        }
    }
}

impl std::error::Error for Error {}
