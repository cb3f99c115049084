//! CLI error type with the stable exit-code contract:
//! 0 success, 1 data/validation error, 2 numerical failure, 3 usage error.

use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags or inconsistent flag combinations (exit 3).
    Usage(String),
    /// File access problems (exit 1).
    Io { path: PathBuf, source: std::io::Error },
    /// A selected cell failed to parse as a finite number (exit 1).
    Parse { line: u64, column: String },
    /// Malformed CSV structure such as a ragged row (exit 1).
    Malformed { line: u64, detail: String },
    /// A requested column does not exist (exit 1).
    MissingColumn(String),
    /// The x column also appears in the y selection (exit 1).
    ColumnOverlap(String),
    /// The same column was selected twice for y (exit 1).
    DuplicateColumn(String),
    /// No usable response columns remain (exit 1).
    EmptySelection,
    /// Too few rows for the selected design (exit 1).
    TooFewRows { n: usize, k: usize },
    /// A numerical failure from the fitting pipeline (exit 2).
    Numerical(String),
    /// The cross-check of the two computation routes exceeded tolerance
    /// (exit 2).
    Equivalence { discrepancy: f64, tol: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Malformed { .. }
            | CliError::MissingColumn(_)
            | CliError::ColumnOverlap(_)
            | CliError::DuplicateColumn(_)
            | CliError::EmptySelection
            | CliError::TooFewRows { .. } => 1,
            CliError::Numerical(_) | CliError::Equivalence { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => {
                write!(f, "cannot access {}: {source}", path.display())
            }
            CliError::Parse { line, column } => write!(
                f,
                "line {line}, column {column}: cell is not a finite number \
                 (missing or non-numeric cells are rejected, not imputed)"
            ),
            CliError::Malformed { line, detail } => {
                write!(f, "line {line}: malformed CSV record ({detail})")
            }
            CliError::MissingColumn(name) => {
                write!(f, "column {name:?} not found (by name or zero-based index)")
            }
            CliError::ColumnOverlap(name) => write!(
                f,
                "column {name:?} is selected as x and also appears in the y selection"
            ),
            CliError::DuplicateColumn(name) => {
                write!(f, "column {name:?} appears more than once in the y selection")
            }
            CliError::EmptySelection => write!(
                f,
                "no response columns selected: every remaining column is non-numeric"
            ),
            CliError::TooFewRows { n, k } => write!(
                f,
                "too few rows: {n} observations for {k} response columns \
                 (need n ≥ k + 2 = {})",
                k + 2
            ),
            CliError::Numerical(msg) => write!(f, "{msg}"),
            CliError::Equivalence { discrepancy, tol } => write!(
                f,
                "consistency check failed: maximum discrepancy {discrepancy:.3e} \
                 is not below tolerance {tol:.3e}"
            ),
        }
    }
}

impl std::error::Error for CliError {}
