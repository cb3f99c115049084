//! Pillai's trace from the classical MANOVA side.
//!
//! Builds the total and error sums-of-squares-and-cross-products matrices
//! and evaluates the trace `V = tr{(T − E)T⁻¹}`. This is the independent
//! counterpart of [`crate::regression::beta_effect`]: the two agree to
//! rounding on every full-rank input, and the test suites lean on that
//! equality heavily.

use crate::error::{Error, Result};
use crate::linalg::{center_columns, gram, mean, symmetrize, Cholesky, Matrix, Vector};

const TRACE_SLACK: f64 = 1e-10;

/// The SSCP decomposition and the trace statistic.
#[derive(Debug, Clone)]
pub struct PillaiResult {
    /// Error SSCP `E = Yᵀ(I − P_B)Y`, the residual cross-products after
    /// projecting each response column on `(1, x)`.
    pub error_sscp: Matrix,
    /// Total SSCP `T = Yᵀ(I − 11ᵀ/n)Y`.
    pub total_sscp: Matrix,
    /// Hypothesis SSCP `T − E`.
    pub hypothesis_sscp: Matrix,
    /// Pillai's trace `V = tr{(T − E)T⁻¹}`.
    pub trace: f64,
}

/// Total SSCP matrix `T`: the Gram matrix of the centered responses.
pub fn total_sscp(y: &Matrix) -> Matrix {
    gram(&center_columns(y))
}

/// Error SSCP matrix `E`, computed by regressing each column of `Y` on
/// `(1, x)` and accumulating the residual cross-products. The n×n projector
/// is never materialized.
pub fn error_sscp(x: &Vector, y: &Matrix) -> Result<Matrix> {
    if x.len() != y.rows() {
        return Err(Error::DimensionMismatch {
            rows: (x.len(), y.rows()),
            cols: (1, y.cols()),
        });
    }
    let n = y.rows();
    let x_mean = mean(x.as_slice());
    let sxx: f64 = x.iter().map(|v| (v - x_mean) * (v - x_mean)).sum();
    if sxx <= 0.0 {
        // det(BᵀB) = n·xᵀx − xᵀ11ᵀx = n·Sxx = 0
        return Err(Error::DegenerateX);
    }

    // residual matrix R: column j is y_j minus its fit on (1, x)
    let mut resid = Matrix::zeros(n, y.cols());
    for j in 0..y.cols() {
        let col = y.col(j);
        let col_mean = mean(&col);
        let sxy: f64 = x
            .iter()
            .zip(&col)
            .map(|(xi, yi)| (xi - x_mean) * (yi - col_mean))
            .sum();
        let slope = sxy / sxx;
        for i in 0..n {
            let fit = col_mean + slope * (x[i] - x_mean);
            resid.set(i, j, col[i] - fit);
        }
    }
    let mut e = gram(&resid);
    symmetrize(&mut e);
    Ok(e)
}

/// Computes Pillai's trace together with the SSCP matrices it is built from.
///
/// The trace is evaluated as `tr(T⁻¹(T − E))` through `k` solves against one
/// Cholesky factorization of `T` — identical to `tr{(T − E)T⁻¹}` by cyclic
/// invariance, but reusing the factorization.
pub fn pillai_trace(x: &Vector, y: &Matrix) -> Result<PillaiResult> {
    if y.rows() < 2 {
        return Err(Error::TooFewRows {
            n: y.rows(),
            k: y.cols(),
        });
    }
    let total = total_sscp(y);
    let error = error_sscp(x, y)?;
    let mut hypothesis = total.sub(&error)?;
    symmetrize(&mut hypothesis);

    let chol = Cholesky::factor(&total).map_err(|e| match e {
        Error::NotPositiveDefinite { pivot } => Error::RankDeficient { column: pivot },
        other => other,
    })?;
    let mut trace = 0.0;
    for j in 0..y.cols() {
        let z = chol.solve_vec(&hypothesis.col(j))?;
        trace += z[j];
    }
    if !(-TRACE_SLACK..=1.0 + TRACE_SLACK).contains(&trace) {
        return Err(Error::EffectOutOfRange { value: trace });
    }
    Ok(PillaiResult {
        error_sscp: error,
        total_sscp: total,
        hypothesis_sscp: hypothesis,
        trace,
    })
}
