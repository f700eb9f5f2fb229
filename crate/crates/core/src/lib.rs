//! Randomized dimensionality reduction for k-means clustering.
//!
//! The library provides four reduction algorithms — two feature-selection
//! (leverage-score sampling and norm-based randomized sampling) and two
//! feature-extraction (random sign projection and approximate SVD) — each
//! mapping an `n x d` data matrix to an `n x r` sketch whose optimal
//! clustering cost provably approximates the original one. Supporting
//! machinery includes a one-sided Jacobi SVD, a randomized range finder,
//! the mailman finite-alphabet multiply, Lloyd's algorithm with a
//! brute-force optimum oracle, and a seeded experiment harness.
//!
//! Core numerics are generic over the floating-point scalar; use the
//! [`Matrix64`] / [`Matrix32`] aliases for concrete work.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

pub mod alias;
pub mod error;
pub mod harness;
pub mod io;
pub mod kmeans;
pub mod mailman;
pub mod matrix;
pub mod reducers;
pub mod rng;
pub mod sampling;
pub mod sketch;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, SvdFactors};
pub use rng::RngStream;

/// Floating-point scalar the numeric kernels are generic over.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion for probability work, which is always
    /// carried out in `f64`.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Double-precision matrix, the default carrier throughout the CLI.
pub type Matrix64 = DenseMatrix<f64>;
/// Single-precision matrix.
pub type Matrix32 = DenseMatrix<f32>;
