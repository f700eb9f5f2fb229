//! Seeded, stream-splittable randomness and the random matrix ensembles
//! used by the reduction algorithms.
//!
//! All draws are made in `f64` and converted to the target scalar, so a
//! given `(seed, stream_id)` produces the same sequence regardless of the
//! scalar type and platform.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::DenseMatrix;
use crate::Scalar;

/// Handle to a deterministic random stream. Identical `(seed, stream_id)`
/// pairs reproduce identical sequences; distinct stream ids give
/// independent sequences from the same seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Derive an independent stream, e.g. one per trial.
    pub fn substream(&self, index: u64) -> Self {
        // Mix the parent stream id so (seed, 0).substream(1) differs from
        // (seed, 1).substream(0).
        Self {
            seed: self.seed,
            stream_id: splitmix(self.stream_id).wrapping_add(index),
        }
    }

    /// Instantiate the generator for this stream.
    pub fn generator(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        StreamRng { inner: rng }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Concrete generator for one stream, with the uniform/Gaussian draws the
/// library needs.
pub struct StreamRng {
    inner: ChaCha8Rng,
}

impl StreamRng {
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        // Multiply-shift; bias is < n / 2^64, irrelevant at desk scale.
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal via Box-Muller (cosine branch only, so the draw
    /// count per variate is fixed).
    pub fn gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// `rows x cols` matrix with i.i.d. N(0, 1) entries.
pub fn gaussian_matrix<S: Scalar>(rng: RngStream, rows: usize, cols: usize) -> DenseMatrix<S> {
    let mut g = rng.generator();
    let data = (0..rows * cols)
        .map(|_| S::from_f64(g.gaussian()).unwrap())
        .collect();
    DenseMatrix::new(rows, cols, data).expect("gaussian entries are finite")
}

/// Random sign matrix with entries +-1/sqrt(cols), each with probability
/// one half. Every column has squared norm rows/cols exactly.
pub fn sign_matrix<S: Scalar>(rng: RngStream, rows: usize, cols: usize) -> DenseMatrix<S> {
    let mut g = rng.generator();
    let scale = S::one() / S::from_usize(cols).unwrap().sqrt();
    let data = (0..rows * cols)
        .map(|_| {
            if g.next_u64() & 1 == 0 {
                scale
            } else {
                -scale
            }
        })
        .collect();
    DenseMatrix::new(rows, cols, data).expect("sign entries are finite")
}

/// Sparse projection matrix with entries +-sqrt(3)/sqrt(cols) with
/// probability 1/6 each and 0 with probability 2/3. The 1/sqrt(cols)
/// rescaling makes it an isometry in expectation.
pub fn achlioptas_matrix<S: Scalar>(rng: RngStream, rows: usize, cols: usize) -> DenseMatrix<S> {
    let mut g = rng.generator();
    let scale = S::from_f64(3.0).unwrap().sqrt() / S::from_usize(cols).unwrap().sqrt();
    let data = (0..rows * cols)
        .map(|_| match g.below(6) {
            0 => scale,
            1 => -scale,
            _ => S::zero(),
        })
        .collect();
    DenseMatrix::new(rows, cols, data).expect("achlioptas entries are finite")
}
