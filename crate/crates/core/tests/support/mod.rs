#![allow(dead_code)] // each integration test compiles its own copy and uses a subset

//! Shared oracles for the integration suites. Everything here is kept
//! independent of the implementation paths it is used to check: the
//! incomplete-beta oracle is pure quadrature (no gamma functions, no
//! continued fractions), and instance generation goes through the public
//! RNG only.

use betatrace_core::rng::{derive_stream_seed, GaussianStream, SplitMix64};
use betatrace_core::{Matrix, Vector};

/// Tanh-sinh (double-exponential) quadrature of `f` over `(0, l)`.
///
/// Nodes are `t(u) = l / (1 + exp(−π·sinh u))`, which keeps full precision
/// toward both endpoints, so integrable endpoint singularities such as
/// `t^{−1/2}` converge cleanly. Step halving stops at a relative change of
/// 1e−13.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, l: f64) -> f64 {
    const UMAX: f64 = 4.5;
    let node = |u: f64| -> (f64, f64) {
        let s = std::f64::consts::FRAC_PI_2 * u.sinh();
        let t = l / (1.0 + (-2.0 * s).exp());
        let sech = 1.0 / s.cosh();
        let w = l * std::f64::consts::FRAC_PI_2 * u.cosh() * 0.5 * sech * sech;
        (t, w)
    };
    let term = |u: f64| -> f64 {
        let (t, w) = node(u);
        if t > 0.0 && t < l && w > 0.0 && w.is_finite() {
            let v = w * f(t);
            if v.is_finite() {
                return v;
            }
        }
        0.0
    };

    let mut h = 0.5;
    let mut total = term(0.0);
    let mut i = 1;
    while (i as f64) * h <= UMAX {
        let u = i as f64 * h;
        total += term(u) + term(-u);
        i += 1;
    }
    let mut integral = h * total;

    for _ in 0..11 {
        h *= 0.5;
        // refine with the new points at odd multiples of the halved step
        let mut i = 1;
        while (i as f64) * h <= UMAX {
            let u = i as f64 * h;
            total += term(u) + term(-u);
            i += 2;
        }
        let refined = h * total;
        if (refined - integral).abs() <= 1e-13 * refined.abs() + 1e-305 {
            return refined;
        }
        integral = refined;
    }
    integral
}

/// Quadrature oracle for the regularized incomplete beta function.
///
/// I_x(a, b) = A / (A + B) with A = ∫₀ˣ t^{a−1}(1−t)^{b−1} dt and
/// B = ∫₀^{1−x} u^{b−1}(1−u)^{a−1} du, both by tanh-sinh quadrature. The
/// normalizing beta function cancels in the ratio, so no gamma evaluation is
/// involved anywhere.
pub fn betainc_oracle(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let lower_density = |t: f64| ((a - 1.0) * t.ln() + (b - 1.0) * (-t).ln_1p()).exp();
    let upper_density = |t: f64| ((b - 1.0) * t.ln() + (a - 1.0) * (-t).ln_1p()).exp();
    let lower = tanh_sinh(&lower_density, x);
    let upper = tanh_sinh(&upper_density, 1.0 - x);
    lower / (lower + upper)
}

/// Median of Beta(a, b) located by bisection on the quadrature oracle.
pub fn beta_median_oracle(a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if betainc_oracle(a, b, mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Squared Pearson correlation by the direct formula.
pub fn pearson_r2(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - xm) * (b - ym);
        sxx += (a - xm) * (a - xm);
        syy += (b - ym) * (b - ym);
    }
    sxy * sxy / (sxx * syy)
}

/// One standard-Gaussian instance (x of length n, Y of shape n×k) from a
/// derived stream.
pub fn gaussian_instance(n: usize, k: usize, seed: u64, index: u64) -> (Vector, Matrix) {
    let mut g = GaussianStream::new(derive_stream_seed(seed, index));
    let x = Vector::new((0..n).map(|_| g.next_normal()).collect()).unwrap();
    let y = Matrix::new(n, k, (0..n * k).map(|_| g.next_normal()).collect()).unwrap();
    (x, y)
}

/// Dimension pairs (n, k) spanning n ∈ [k+2, n_max], k ∈ [1, k_max]. The
/// first `k_max` pairs sit at the minimal n = k+2 and the next few at the
/// maximal n, so both edges are always exercised.
pub fn spanning_dims(count: usize, k_max: usize, n_max: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut dims = Vec::with_capacity(count);
    for k in 1..=k_max.min(count) {
        dims.push((k + 2, k));
    }
    let mut k = 1;
    while dims.len() < count.min(k_max + 5) {
        dims.push((n_max, k));
        k += 1;
    }
    let mut rng = SplitMix64::new(seed);
    while dims.len() < count {
        let k = 1 + (rng.next_u64() % k_max as u64) as usize;
        let span = (n_max - k - 1) as u64;
        let n = k + 2 + (rng.next_u64() % span) as usize;
        dims.push((n, k));
    }
    dims
}
