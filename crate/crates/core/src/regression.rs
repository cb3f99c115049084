//! The two regressions behind the single-coefficient effect.
//!
//! `fit_multiple` regresses the scalar predictor `x` on the response block
//! `Y` (the reversed multiple regression), producing coefficients `b̂` and
//! the score `s = Y b̂`. `fit_simple` then regresses `s` on `x`; its slope is
//! the effect `β̂`, which coincides with Pillai's trace and with the shared
//! R² of both regressions.

use crate::error::{Error, Result};
use crate::linalg::{dot, mean, spd_solve, Matrix, Vector};

/// Slack allowed before an effect outside [0, 1] is treated as a numerical
/// fault rather than rounding.
const EFFECT_SLACK: f64 = 1e-10;

/// Least-squares fit of `x = â·1 + Y·b̂ + ê`.
#[derive(Debug, Clone)]
pub struct MultiRegressionFit {
    /// Intercept `â`.
    pub intercept: f64,
    /// Coefficients `b̂`, one per response column.
    pub coefficients: Vector,
    /// Score `s = Y·b̂`.
    pub score: Vector,
    /// Fitted values `â·1 + s`.
    pub fitted: Vector,
    /// Residuals `ê = x − fitted`.
    pub residuals: Vector,
    /// Coefficient of determination of the fit.
    pub r_squared: f64,
}

/// Least-squares fit of `response = intercept + slope·predictor`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleRegressionFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
}

fn check_shape(x: &Vector, y: &Matrix) -> Result<()> {
    if x.len() != y.rows() {
        return Err(Error::DimensionMismatch {
            rows: (x.len(), y.rows()),
            cols: (1, y.cols()),
        });
    }
    if x.len() < y.cols() + 2 {
        return Err(Error::TooFewRows {
            n: x.len(),
            k: y.cols(),
        });
    }
    Ok(())
}

/// Fits the multiple regression of `x` on the design `(1, Y)` via the
/// normal equations and a single SPD solve.
///
/// Errors with [`Error::RankDeficient`] when the design is singular within
/// the pivot tolerance (the reported column is the zero-based index of the
/// offending `Y` column) and with [`Error::DegenerateX`] when `x` is
/// constant, in which case R² is undefined.
pub fn fit_multiple(x: &Vector, y: &Matrix) -> Result<MultiRegressionFit> {
    check_shape(x, y)?;
    let n = x.len();
    let k = y.cols();

    let x_mean = mean(x.as_slice());
    let tss: f64 = x.iter().map(|v| (v - x_mean) * (v - x_mean)).sum();
    if tss <= 0.0 {
        return Err(Error::DegenerateX);
    }

    // normal equations of the design A = (1, Y): AᵀA θ = Aᵀx
    let p = k + 1;
    let mut ata = Matrix::zeros(p, p);
    ata.set(0, 0, n as f64);
    for j in 0..k {
        let col_sum: f64 = (0..n).map(|i| y.get(i, j)).sum();
        ata.set(0, j + 1, col_sum);
        ata.set(j + 1, 0, col_sum);
    }
    for a in 0..k {
        for b in a..k {
            let s: f64 = (0..n).map(|i| y.get(i, a) * y.get(i, b)).sum();
            ata.set(a + 1, b + 1, s);
            ata.set(b + 1, a + 1, s);
        }
    }
    let mut atx = Matrix::zeros(p, 1);
    atx.set(0, 0, x.iter().sum());
    for j in 0..k {
        let s: f64 = (0..n).map(|i| y.get(i, j) * x[i]).sum();
        atx.set(j + 1, 0, s);
    }

    let theta = spd_solve(&ata, &atx).map_err(|e| match e {
        // pivot 0 is the intercept and cannot fail for n ≥ 1; pivots j ≥ 1
        // correspond to Y column j−1
        Error::NotPositiveDefinite { pivot } => Error::RankDeficient {
            column: pivot.saturating_sub(1),
        },
        other => other,
    })?;

    let intercept = theta.get(0, 0);
    let coefficients: Vec<f64> = (1..p).map(|j| theta.get(j, 0)).collect();
    let score = y.mul_vec(&coefficients)?;
    let fitted: Vec<f64> = score.iter().map(|s| intercept + s).collect();
    let residuals: Vec<f64> = x
        .iter()
        .zip(&fitted)
        .map(|(xi, fi)| xi - fi)
        .collect();
    let rss = dot(&residuals, &residuals);
    let r_squared = 1.0 - rss / tss;

    Ok(MultiRegressionFit {
        intercept,
        coefficients: Vector::new(coefficients)?,
        score: Vector::new(score)?,
        fitted: Vector::new(fitted)?,
        residuals: Vector::new(residuals)?,
        r_squared,
    })
}

/// Fits the simple regression of `response` on `predictor` by the closed
/// form `slope = Σ(p−p̄)(r−r̄) / Σ(p−p̄)²`.
///
/// A constant response yields slope 0, intercept equal to the response mean,
/// and R² defined as 0. A constant predictor is [`Error::DegenerateX`].
pub fn fit_simple(response: &Vector, predictor: &Vector) -> Result<SimpleRegressionFit> {
    if response.len() != predictor.len() {
        return Err(Error::DimensionMismatch {
            rows: (response.len(), predictor.len()),
            cols: (1, 1),
        });
    }
    if response.len() < 3 {
        return Err(Error::TooFewRows {
            n: response.len(),
            k: 1,
        });
    }
    let p_mean = mean(predictor.as_slice());
    let r_mean = mean(response.as_slice());
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (p, r) in predictor.iter().zip(response.iter()) {
        let dp = p - p_mean;
        let dr = r - r_mean;
        sxx += dp * dp;
        sxy += dp * dr;
        syy += dr * dr;
    }
    if sxx <= 0.0 {
        return Err(Error::DegenerateX);
    }
    let slope = sxy / sxx;
    let intercept = r_mean - slope * p_mean;
    let r_squared = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 0.0 };
    Ok(SimpleRegressionFit {
        intercept,
        slope,
        r_squared,
    })
}

/// The composed pipeline: fit `x` on `Y`, form the score `s = Y·b̂`, and
/// return the slope of `s` regressed on `x`.
///
/// The result always lies in [0, 1]; a value outside by more than `1e−10`
/// indicates a numerical fault and is reported as
/// [`Error::EffectOutOfRange`] rather than clamped.
pub fn beta_effect(x: &Vector, y: &Matrix) -> Result<f64> {
    let multi = fit_multiple(x, y)?;
    let simple = fit_simple(&multi.score, x)?;
    let effect = simple.slope;
    if !(-EFFECT_SLACK..=1.0 + EFFECT_SLACK).contains(&effect) {
        return Err(Error::EffectOutOfRange { value: effect });
    }
    Ok(effect)
}
