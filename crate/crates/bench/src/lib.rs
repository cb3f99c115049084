//! Benchmark-only crate; see `benches/pipeline.rs`.
//!
//! Shared fixture generation lives here so benchmarks stay focused on the
//! measured calls.

use betatrace_core::rng::{derive_stream_seed, GaussianStream};
use betatrace_core::{Matrix, Vector};

/// A standard-Gaussian instance with a derived, reproducible stream.
pub fn gaussian_instance(n: usize, k: usize, seed: u64) -> (Vector, Matrix) {
    let mut g = GaussianStream::new(derive_stream_seed(seed, 0));
    let x = Vector::new((0..n).map(|_| g.next_normal()).collect()).unwrap();
    let y = Matrix::new(n, k, (0..n * k).map(|_| g.next_normal()).collect()).unwrap();
    (x, y)
}
