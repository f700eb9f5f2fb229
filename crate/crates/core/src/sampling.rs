//! Norm-proportional row sampling: draw `r` i.i.d. rows of a matrix with
//! probability proportional to their squared Euclidean norm, recording the
//! selection matrix and the 1/sqrt(r p_i) rescaling.

use crate::alias::AliasTable;
use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm_sq, DenseMatrix};
use crate::rng::RngStream;
use crate::Scalar;

/// The pair (Omega, S): a column-selection table of `r` indices into the
/// source dimension, and the diagonal rescaling 1/sqrt(r p_i). Applied on
/// the right, `Y * (Omega S)` keeps `r` rescaled columns of `Y`.
#[derive(Clone, Debug)]
pub struct SamplingOperator {
    /// 0-based selected indices, one per trial.
    pub indices: Vec<usize>,
    /// Rescaling factor per trial: 1/sqrt(r * p_index).
    pub scales: Vec<f64>,
    /// Dimension the indices point into (rows of the sampled matrix).
    pub source_dim: usize,
}

impl SamplingOperator {
    pub fn r(&self) -> usize {
        self.indices.len()
    }

    /// Materialized Omega in {0,1}^{source_dim x r}: one 1 per column.
    pub fn materialize_omega<S: Scalar>(&self) -> DenseMatrix<S> {
        let mut omega = DenseMatrix::zeros(self.source_dim, self.r());
        for (t, &i) in self.indices.iter().enumerate() {
            omega.set(i, t, S::one());
        }
        omega
    }

    /// Materialized diagonal rescaling matrix S in R^{r x r}.
    pub fn materialize_s<S: Scalar>(&self) -> DenseMatrix<S> {
        let diag: Vec<S> = self
            .scales
            .iter()
            .map(|&s| S::from_f64(s).unwrap())
            .collect();
        DenseMatrix::diag(&diag)
    }

    /// Compute `Y * (Omega S)` without materializing either factor.
    pub fn apply_right<S: Scalar>(&self, y: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
        if y.cols() != self.source_dim {
            return Err(Error::Dimension(format!(
                "operator selects from dimension {}, matrix has {} columns",
                self.source_dim,
                y.cols()
            )));
        }
        let mut out = DenseMatrix::zeros(y.rows(), self.r());
        for (t, (&idx, &scale)) in self.indices.iter().zip(self.scales.iter()).enumerate() {
            let s = S::from_f64(scale).unwrap();
            for i in 0..y.rows() {
                out.set(i, t, y.get(i, idx) * s);
            }
        }
        Ok(out)
    }
}

/// Row-norm sampling distribution p_i = ||M_(i)||^2 / ||M||_F^2.
pub fn row_norm_distribution<S: Scalar>(m: &DenseMatrix<S>) -> Result<Vec<f64>> {
    let total = frobenius_norm_sq(m).to_f64_lossy();
    if total <= 0.0 {
        return Err(Error::BadDistribution(
            "all-zero matrix: row-norm distribution undefined".into(),
        ));
    }
    Ok((0..m.rows())
        .map(|i| m.row_norm_sq(i).to_f64_lossy() / total)
        .collect())
}

/// Draw `r` i.i.d. rows of `M` (with replacement) proportionally to their
/// squared norms, via a Vose alias table. O(rows * cols + rows + r).
pub fn randomized_sampling<S: Scalar>(
    m: &DenseMatrix<S>,
    r: usize,
    rng: RngStream,
) -> Result<SamplingOperator> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let p = row_norm_distribution(m)?;
    sample_from_distribution(&p, r, rng)
}

/// Draw `r` i.i.d. categories from an explicit distribution, recording
/// the with-replacement rescaling 1/sqrt(r p_i).
pub fn sample_from_distribution(p: &[f64], r: usize, rng: RngStream) -> Result<SamplingOperator> {
    let table = AliasTable::build(p)?;
    let mut g = rng.generator();
    let mut indices = Vec::with_capacity(r);
    let mut scales = Vec::with_capacity(r);
    for _ in 0..r {
        let i = table.sample(&mut g);
        indices.push(i);
        scales.push(1.0 / (r as f64 * p[i]).sqrt());
    }
    Ok(SamplingOperator {
        indices,
        scales,
        source_dim: p.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix64;

    #[test]
    fn single_nonzero_row_always_selected() {
        let mut m = Matrix64::zeros(4, 3);
        m.set(2, 0, 5.0);
        let op = randomized_sampling(&m, 20, RngStream::new(1, 0)).unwrap();
        let expected_scale = 1.0 / (20f64).sqrt();
        for (&i, &s) in op.indices.iter().zip(op.scales.iter()) {
            assert_eq!(i, 2);
            assert!((s - expected_scale).abs() < 1e-15);
        }
    }

    #[test]
    fn equal_norm_rows_sampled_evenly() {
        let m = Matrix64::new(2, 2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        let r = 100_000;
        let op = randomized_sampling(&m, r, RngStream::new(2, 0)).unwrap();
        let f0 = op.indices.iter().filter(|&&i| i == 0).count() as f64 / r as f64;
        assert!((0.494..=0.506).contains(&f0), "frequency {}", f0);
    }

    #[test]
    fn omega_columns_are_standard_basis_vectors() {
        let m = crate::testutil::deterministic_matrix(6, 3);
        let p = row_norm_distribution(&m).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        let op = randomized_sampling(&m, 10, RngStream::new(3, 0)).unwrap();
        let omega: Matrix64 = op.materialize_omega();
        for t in 0..10 {
            let ones = (0..6).filter(|&i| omega.get(i, t) == 1.0).count();
            let zeros = (0..6).filter(|&i| omega.get(i, t) == 0.0).count();
            assert_eq!(ones, 1);
            assert_eq!(zeros, 5);
        }
    }

    #[test]
    fn apply_right_matches_materialized_product() {
        let m = crate::testutil::deterministic_matrix(5, 4);
        let y = crate::testutil::deterministic_matrix(3, 5);
        let op = randomized_sampling(&m, 7, RngStream::new(4, 0)).unwrap();
        let fast = op.apply_right(&y).unwrap();
        let slow = y
            .matmul(&op.materialize_omega())
            .unwrap()
            .matmul(&op.materialize_s())
            .unwrap();
        assert!(fast.max_abs_diff(&slow) < 1e-12);
    }

    #[test]
    fn zero_matrix_rejected() {
        let m = Matrix64::zeros(3, 3);
        assert!(randomized_sampling(&m, 2, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn sampling_allows_r_beyond_source_dimension() {
        // With-replacement draws are well defined for any r >= 1; the
        // singular-value concentration regime needs r much larger than n.
        let m = crate::testutil::deterministic_matrix(4, 2);
        let op = randomized_sampling(&m, 50, RngStream::new(5, 0)).unwrap();
        assert_eq!(op.r(), 50);
    }
}
