//! Special functions backing the inference module: log-gamma, the
//! regularized incomplete gamma functions, and the complementary error
//! function. All hand-rolled so the crate stays dependency-free.

/// ln Γ(x) for x > 0 via the Lanczos approximation with g = 607/128 and 15
/// coefficients (Pugh's optimal set for double precision; relative error
/// below 1e−14 on the positive axis).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    const G: f64 = 607.0 / 128.0;
    #[allow(clippy::excessive_precision)] // published coefficient digits kept verbatim
    const COEFFS: [f64; 15] = [
        0.999_999_999_999_997_1,
        57.156_235_665_862_92,
        -59.597_960_355_475_49,
        14.136_097_974_741_746,
        -0.491_913_816_097_620_2,
        0.339_946_499_848_118_87e-4,
        0.465_236_289_270_485_76e-4,
        -0.983_744_753_048_795_6e-4,
        0.158_088_703_224_912_49e-3,
        -0.210_264_441_724_104_88e-3,
        0.217_439_618_115_212_64e-3,
        -0.164_318_106_536_763_89e-3,
        0.844_182_239_838_527_4e-4,
        -0.261_908_384_015_814_1e-4,
        0.368_991_826_595_316_25e-5,
    ];
    let mut sum = COEFFS[0];
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let tmp = x + G + 0.5;
    (x + 0.5) * tmp.ln() - tmp + 0.5 * (2.0 * std::f64::consts::PI).ln() + (sum / x).ln()
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

const GAMMA_EPS: f64 = 1e-16;
const GAMMA_MAX_ITER: usize = 600;

/// Lower regularized incomplete gamma P(a, x) by its power series;
/// converges quickly for x < a + 1.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (a * x.ln() - x - ln_gamma(a)).exp()
}

/// Upper regularized incomplete gamma Q(a, x) by its continued fraction
/// (modified Lentz); converges quickly for x ≥ a + 1.
fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    h * (a * x.ln() - x - ln_gamma(a)).exp()
}

/// Upper regularized incomplete gamma Q(a, x) = Γ(a, x)/Γ(a) for a > 0,
/// x ≥ 0.
pub fn upper_regularized_gamma(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "invalid incomplete gamma arguments");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - lower_gamma_series(a, x)
    } else {
        upper_gamma_cf(a, x)
    }
}

/// Complementary error function, erfc(x) = Q(1/2, x²) for x ≥ 0 and
/// 2 − erfc(−x) otherwise. Absolute accuracy is a few ulps of the
/// incomplete gamma evaluation, far inside 1e−12.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else {
        upper_regularized_gamma(0.5, x * x)
    }
}
