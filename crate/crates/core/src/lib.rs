//! One interpretable coefficient for multivariate association testing.
//!
//! Given a scalar predictor `x` and a block of responses `Y`, the library
//! computes a single regression effect β̂ by fitting the reversed multiple
//! regression `x = a·1 + Y·b + e`, forming the score `s = Y·b̂`, and taking
//! the slope of `s` regressed on `x`. That slope equals Pillai's trace
//! `V = tr{(T − E)T⁻¹}` and the shared R² of both regressions, and the
//! identity chain extends through the F statistic:
//!
//! ```text
//! β̂ = V = R² = kF / ((n − k − 1) + kF)
//! ```
//!
//! Both sides of the identity are implemented independently — the regression
//! pipeline in [`regression`] and the MANOVA pipeline in [`manova`] — so the
//! equality can be certified numerically on real data. Under a Gaussian null
//! the effect follows Beta(k/2, (n − k − 1)/2) exactly; [`inference`]
//! provides the exact Beta p-value and a Gaussian (Wald) approximation, and
//! [`montecarlo`] validates both by simulation.
//!
//! # Example
//!
//! ```
//! use betatrace_core::{beta_effect, pillai_trace, InferenceReport, Matrix, Vector};
//!
//! let x = Vector::from_slice(&[0.2, 1.1, -0.4, 2.3, 0.9, -1.5, 0.0, 1.7]);
//! let y = Matrix::from_cols(&[
//!     &[0.5, 1.0, -0.2, 1.9, 1.1, -1.2, 0.3, 1.4],
//!     &[-0.1, 0.6, 0.4, -0.8, 0.2, 0.9, -0.5, 0.1],
//! ]);
//!
//! let effect = beta_effect(&x, &y)?;
//! let trace = pillai_trace(&x, &y)?.trace;
//! assert!((effect - trace).abs() < 1e-10);
//!
//! let report = InferenceReport::from_effect(effect, x.len(), y.cols())?;
//! assert!(report.p_exact > 0.0 && report.p_exact <= 1.0);
//! # Ok::<(), betatrace_core::Error>(())
//! ```

pub mod error;
pub mod inference;
pub mod linalg;
pub mod manova;
pub mod montecarlo;
pub mod regression;
pub mod rng;
pub mod special;

pub use error::{Error, Result};
pub use inference::{
    exact_p_value, f_from_r2, gaussian_upper_tail, r2_from_f, regularized_incomplete_beta,
    wald_test, BetaParams, InferenceReport,
};
pub use linalg::{
    center_columns, centered_gram_inverse_apply, gram, spd_solve, Cholesky, Matrix, Vector,
};
pub use manova::{error_sscp, pillai_trace, total_sscp, PillaiResult};
pub use montecarlo::{
    calibrate, calibrate_with_run, ks_against_beta, simulate, simulate_null, CalibrationReport,
    SimConfig, SimulationRun,
};
pub use regression::{beta_effect, fit_multiple, fit_simple, MultiRegressionFit, SimpleRegressionFit};
