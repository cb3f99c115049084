//! Self-contained pseudo-random number generation for the simulation
//! harness: SplitMix64 streams with counter-based derivation, plus Gaussian
//! variates via the (trigonometric) Box–Muller transform.
//!
//! Per-replicate streams are derived, never shared: replicate `r` of a run
//! seeded with `s` draws from `SplitMix64` seeded with `mix64(s + r·γ)`,
//! where `γ` is the SplitMix64 increment. Each stream is therefore a pure
//! function of `(s, r)`, so results are independent of evaluation order.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function (Vigna): a bijective 64-bit mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the stream seed for a (seed, counter) pair.
#[inline]
pub fn derive_stream_seed(seed: u64, counter: u64) -> u64 {
    mix64(seed.wrapping_add(counter.wrapping_mul(GAMMA)).wrapping_add(GAMMA))
}

/// SplitMix64 generator. Fast, good diffusion, non-cryptographic; fine for
/// statistical sampling.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64) / DEN
    }
}

/// Standard normal variates from a SplitMix64 stream via Box–Muller,
/// generated pair-at-a-time with the second value cached.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: SplitMix64,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::new(seed),
            spare: None,
        }
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 ∈ (0, 1] so the log is finite
        let u1 = 1.0 - self.rng.next_f64();
        let u2 = self.rng.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}
