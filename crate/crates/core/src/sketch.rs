//! Randomized rank-k range finder: computes `Z` approximating the top-k
//! right singular vectors of `A` in O(ndk/eps) time, with
//! `E[||A - A Z Z^T||_F^2] <= (1 + eps) ||A - A_k||_F^2`.

use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm_sq, orthonormal_basis, svd, DenseMatrix, DEFAULT_RANK_CUTOFF};
use crate::rng::{gaussian_matrix, RngStream};
use crate::Scalar;

/// Output of the randomized range finder.
#[derive(Clone, Debug)]
pub struct FfsvdResult<S: Scalar> {
    /// `d x k` matrix with orthonormal columns, `Z ~ V_k`.
    pub z: DenseMatrix<S>,
    /// Internal sketch width `k + ceil(k/eps + 1)`.
    pub r_internal: usize,
    /// `||A - A Z Z^T||_F^2`.
    pub residual_sq: S,
}

/// Randomized approximation of the top-k right singular subspace.
///
/// Draws a Gaussian sketch `Y = A R`, orthonormalizes it to `Q`, and takes
/// the top-k right singular vectors of the small matrix `Q^T A`. When the
/// input has rank below `k`, the basis is completed with arbitrary
/// orthonormal directions so downstream consumers always get `d x k`.
pub fn fast_frobenius_svd<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    eps: f64,
    rng: RngStream,
) -> Result<FfsvdResult<S>> {
    let (n, d) = (a.rows(), a.cols());
    if k < 1 || k > n.min(d) {
        return Err(Error::InvalidArgument(format!(
            "k = {} out of range [1, {}]",
            k,
            n.min(d)
        )));
    }
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "eps = {} not in (0, 1)",
            eps
        )));
    }

    let r_internal = k + (k as f64 / eps + 1.0).ceil() as usize;
    let r = gaussian_matrix::<S>(rng.substream(0), d, r_internal);
    let y = a.matmul(&r)?;
    let q = orthonormal_basis(&y)?;
    // q may have fewer than r_internal columns when A is low rank; the
    // small SVD below sees rank(Q^T A) = rank-of-range directions.
    let b = q.transpose().matmul(a)?;
    let factors = svd(&b, DEFAULT_RANK_CUTOFF)?;

    let available = factors.rank.min(k);
    let mut z = DenseMatrix::zeros(d, k);
    for j in 0..available {
        for i in 0..d {
            z.set(i, j, factors.v.get(i, j));
        }
    }
    if available < k {
        complete_basis(&mut z, available, rng.substream(1))?;
    }

    let az = a.matmul(&z)?;
    let azzt = az.matmul(&z.transpose())?;
    let residual_sq = frobenius_norm_sq(&a.sub(&azzt)?);
    Ok(FfsvdResult {
        z,
        r_internal,
        residual_sq,
    })
}

/// Fill columns `from..` of `z` with orthonormal directions orthogonal to
/// the existing ones, drawn from the given stream.
fn complete_basis<S: Scalar>(
    z: &mut DenseMatrix<S>,
    from: usize,
    rng: RngStream,
) -> Result<()> {
    let d = z.rows();
    let k = z.cols();
    let mut g = rng.generator();
    let mut filled = from;
    let mut attempts = 0;
    while filled < k {
        attempts += 1;
        if attempts > 100 * k {
            return Err(Error::InvalidArgument(
                "failed to complete an orthonormal basis".into(),
            ));
        }
        let mut cand: Vec<S> = (0..d).map(|_| S::from_f64(g.gaussian()).unwrap()).collect();
        for _ in 0..2 {
            for j in 0..filled {
                let mut proj = S::zero();
                for i in 0..d {
                    proj = proj + cand[i] * z.get(i, j);
                }
                for i in 0..d {
                    cand[i] = cand[i] - proj * z.get(i, j);
                }
            }
        }
        let norm = cand
            .iter()
            .map(|&x| x * x)
            .fold(S::zero(), |u, w| u + w)
            .sqrt();
        if norm.to_f64_lossy() < 1e-8 {
            continue;
        }
        for (i, c) in cand.iter().enumerate() {
            z.set(i, filled, *c / norm);
        }
        filled += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{best_rank_k, frobenius_norm};
    use crate::testutil::deterministic_matrix;
    use crate::Matrix64;

    fn padded_diag(values: &[f64], rows: usize) -> Matrix64 {
        let cols = values.len();
        let mut m = Matrix64::zeros(rows, cols);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[test]
    fn exact_rank_input_is_captured() {
        let a = padded_diag(&[5.0, 3.0], 8);
        let res = fast_frobenius_svd(&a, 2, 0.5, RngStream::new(1, 0)).unwrap();
        assert!(res.residual_sq <= 1e-10 * frobenius_norm_sq(&a));
    }

    #[test]
    fn z_has_orthonormal_columns() {
        let a = deterministic_matrix(10, 6);
        let res = fast_frobenius_svd(&a, 3, 0.4, RngStream::new(2, 0)).unwrap();
        let ztz = res.z.transpose().matmul(&res.z).unwrap();
        assert!(ztz.max_abs_diff(&Matrix64::identity(3)) < 1e-8);
        // E Z = 0 for E = A - A Z Z^T.
        let az = a.matmul(&res.z).unwrap();
        let e = a.sub(&az.matmul(&res.z.transpose()).unwrap()).unwrap();
        let ez = e.matmul(&res.z).unwrap();
        assert!(ez.max_abs_diff(&Matrix64::zeros(10, 3)) < 1e-8 * frobenius_norm(&a));
    }

    #[test]
    fn expectation_bound_on_known_spectrum() {
        // A = diag(5, 3, 1, 0.1) padded to 8x4; ||A - A_2||_F^2 = 1 + 0.01.
        let a = padded_diag(&[5.0, 3.0, 1.0, 0.1], 8);
        let tail = 1.0 + 0.01;
        let eps = 0.5;
        let trials = 200u64;
        let mean: f64 = (0..trials)
            .map(|t| {
                fast_frobenius_svd(&a, 2, eps, RngStream::new(77, t))
                    .unwrap()
                    .residual_sq
            })
            .sum::<f64>()
            / trials as f64;
        assert!(mean <= 1.5 * tail, "mean residual {} vs bound {}", mean, 1.5 * tail);
    }

    #[test]
    fn markov_style_tail_bound() {
        // ||E||_F^2 <= (1 + 100 eps) ||A - A_k||_F^2 in >= 95% of trials.
        let a = padded_diag(&[5.0, 3.0, 1.0, 0.1], 8);
        let tail = 1.0 + 0.01;
        let eps = 0.25;
        let trials = 500u64;
        let ok = (0..trials)
            .filter(|&t| {
                let res = fast_frobenius_svd(&a, 2, eps, RngStream::new(101, t)).unwrap();
                res.residual_sq <= (1.0 + 100.0 * eps) * tail
            })
            .count();
        assert!(ok as f64 >= 0.95 * trials as f64, "only {}/{} trials", ok, trials);
    }

    #[test]
    fn r_internal_formula() {
        let a = deterministic_matrix(12, 9);
        let res = fast_frobenius_svd(&a, 3, 0.25, RngStream::new(5, 0)).unwrap();
        assert_eq!(res.r_internal, 3 + (3.0 / 0.25f64 + 1.0).ceil() as usize);
    }

    #[test]
    fn rank_deficient_input_still_returns_k_directions() {
        // Rank-1 matrix, k = 3: the basis is completed arbitrarily.
        let mut a = Matrix64::zeros(6, 4);
        for j in 0..4 {
            a.set(0, j, 1.0);
        }
        let res = fast_frobenius_svd(&a, 3, 0.5, RngStream::new(9, 0)).unwrap();
        let ztz = res.z.transpose().matmul(&res.z).unwrap();
        assert!(ztz.max_abs_diff(&Matrix64::identity(3)) < 1e-8);
        assert!(res.residual_sq < 1e-16);
    }

    #[test]
    fn residual_never_beats_eckart_young() {
        let a = deterministic_matrix(9, 7);
        let a2 = best_rank_k(&a, 2).unwrap();
        let opt = frobenius_norm(&a.sub(&a2).unwrap());
        for t in 0..20u64 {
            let res = fast_frobenius_svd(&a, 2, 0.3, RngStream::new(13, t)).unwrap();
            assert!(res.residual_sq.sqrt() >= opt - 1e-10);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let a = deterministic_matrix(5, 4);
        assert!(fast_frobenius_svd(&a, 0, 0.5, RngStream::new(0, 0)).is_err());
        assert!(fast_frobenius_svd(&a, 5, 0.5, RngStream::new(0, 0)).is_err());
        assert!(fast_frobenius_svd(&a, 2, 0.0, RngStream::new(0, 0)).is_err());
        assert!(fast_frobenius_svd(&a, 2, 1.0, RngStream::new(0, 0)).is_err());
    }
}
