//! Dimensionality reducers for k-means: two feature-selection methods
//! (leverage-score and approximate-leverage sampling), random sign
//! projection, an approximate-SVD extraction, and a Gaussian baseline.
//! Each maps `A` in R^{n x d} to `A~` in R^{n x r} with fewer features.

use crate::error::{Error, Result};
use crate::mailman::mailman_matmul;
use crate::matrix::{top_right_singular_vectors, DenseMatrix};
use crate::rng::{achlioptas_matrix, gaussian_matrix, sign_matrix, RngStream};
use crate::sampling::{randomized_sampling, sample_from_distribution, SamplingOperator};
use crate::sketch::fast_frobenius_svd;
use crate::Scalar;

/// Which reduction produced a sketch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionMethod {
    LeverageSelect,
    SamplingSelect,
    RandomProjection,
    ApproxSvd,
    GaussianJl,
}

impl ReductionMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionMethod::LeverageSelect => "leverage_select",
            ReductionMethod::SamplingSelect => "sampling_select",
            ReductionMethod::RandomProjection => "random_projection",
            ReductionMethod::ApproxSvd => "approx_svd",
            ReductionMethod::GaussianJl => "gaussian_jl",
        }
    }
}

/// Entry distribution of the random projection matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionVariant {
    /// Entries +-1/sqrt(r), probability 1/2 each.
    DenseSign,
    /// Entries +-sqrt(3)/sqrt(r) with probability 1/6 each, else 0.
    Achlioptas,
}

/// The recorded reduction operator, enough to reproduce `A~` from `A`.
#[derive(Clone, Debug)]
pub enum ReductionOperator<S: Scalar> {
    /// Column selection with rescaling: `A~ = A (Omega S)`.
    Selection(SamplingOperator),
    /// Dense right multiplier: `A~ = A P` for the stored d x r `P`.
    Dense(DenseMatrix<S>),
}

/// Parameters the reducer actually used.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReductionParams {
    pub k: usize,
    pub eps: f64,
    pub c1: f64,
    pub c2: f64,
}

/// A reduced data set plus provenance: the method, target dimension, the
/// operator that produced it, and the parameters in force.
#[derive(Clone, Debug)]
pub struct SketchOutput<S: Scalar> {
    pub a_tilde: DenseMatrix<S>,
    pub method: ReductionMethod,
    pub r: usize,
    pub operator: ReductionOperator<S>,
    pub params: ReductionParams,
}

/// Normalized leverage scores of the d features:
/// `l_i = ||(V_k)_(i)||^2 / k` for the exact top-k right singular vectors.
/// They are nonnegative and sum to 1.
pub fn leverage_scores<S: Scalar>(a: &DenseMatrix<S>, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let vk = top_right_singular_vectors(a, k)?;
    let scores: Vec<f64> = (0..a.cols())
        .map(|i| vk.row_norm_sq(i).to_f64_lossy() / k as f64)
        .collect();
    debug_assert!((scores.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    Ok(scores)
}

/// Target dimension in the theorem regime for leverage-score selection,
/// r = ceil(c * k * ln(k/eps) / eps^2). The analysis fixes only the growth
/// rate, so the constant is caller-chosen (default 1).
pub fn leverage_theorem_r(k: usize, eps: f64, c: f64) -> usize {
    (c * k as f64 * (k as f64 / eps).ln() / (eps * eps)).ceil() as usize
}

/// Feature selection by exact leverage scores: draw r i.i.d. features from
/// the leverage distribution, rescale column t by 1/sqrt(r * l_{i_t}).
pub fn reduce_leverage_select<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    eps: f64,
    r: usize,
    rng: RngStream,
) -> Result<SketchOutput<S>> {
    check_eps(eps, 1.0)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let scores = leverage_scores(a, k)?;
    let op = sample_from_distribution(&scores, r, rng)?;
    let a_tilde = op.apply_right(a)?;
    Ok(SketchOutput {
        a_tilde,
        method: ReductionMethod::LeverageSelect,
        r,
        operator: ReductionOperator::Selection(op),
        params: ReductionParams {
            k,
            eps,
            ..Default::default()
        },
    })
}

/// Feature selection by approximate leverage scores: Z from the randomized
/// range finder, features drawn by Z's row norms, r = ceil(c1*4k*ln(200k)/eps^2).
pub fn reduce_sampling_select<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    eps: f64,
    c1: f64,
    rng: RngStream,
) -> Result<SketchOutput<S>> {
    check_eps(eps, 1.0 / 3.0)?;
    if c1 <= 0.0 {
        return Err(Error::InvalidArgument(format!("c1 = {} must be > 0", c1)));
    }
    let r = (c1 * 4.0 * k as f64 * (200.0 * k as f64).ln() / (eps * eps)).ceil() as usize;
    check_reduces(r, a.cols())?;
    let z = fast_frobenius_svd(a, k, eps, rng.substream(0))?.z;
    let op = randomized_sampling(&z, r, rng.substream(1))?;
    let a_tilde = op.apply_right(a)?;
    Ok(SketchOutput {
        a_tilde,
        method: ReductionMethod::SamplingSelect,
        r,
        operator: ReductionOperator::Selection(op),
        params: ReductionParams {
            k,
            eps,
            c1,
            ..Default::default()
        },
    })
}

/// Random sign projection `A~ = A P` with r = ceil(c2*k/eps^2) columns.
/// With `use_mailman` the product runs through the finite-alphabet fast
/// multiply; results agree with the naive product to 1e-12.
pub fn reduce_random_projection<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    eps: f64,
    c2: f64,
    variant: ProjectionVariant,
    use_mailman: bool,
    rng: RngStream,
) -> Result<SketchOutput<S>> {
    check_eps(eps, 1.0 / 3.0)?;
    if c2 <= 0.0 {
        return Err(Error::InvalidArgument(format!("c2 = {} must be > 0", c2)));
    }
    let r = (c2 * k as f64 / (eps * eps)).ceil() as usize;
    check_reduces(r, a.cols())?;
    let d = a.cols();
    let (pi, alphabet): (DenseMatrix<S>, Vec<S>) = match variant {
        ProjectionVariant::DenseSign => {
            let s = S::one() / S::from_usize(r).unwrap().sqrt();
            (sign_matrix(rng, d, r), vec![-s, s])
        }
        ProjectionVariant::Achlioptas => {
            let s = S::from_f64(3.0).unwrap().sqrt() / S::from_usize(r).unwrap().sqrt();
            (achlioptas_matrix(rng, d, r), vec![-s, S::zero(), s])
        }
    };
    let a_tilde = if use_mailman {
        // A P = (P^T A^T)^T with P^T in the finite alphabet.
        mailman_matmul(&pi.transpose(), &a.transpose(), &alphabet)?.transpose()
    } else {
        a.matmul(&pi)?
    };
    Ok(SketchOutput {
        a_tilde,
        method: ReductionMethod::RandomProjection,
        r,
        operator: ReductionOperator::Dense(pi),
        params: ReductionParams {
            k,
            eps,
            c2,
            ..Default::default()
        },
    })
}

/// Feature extraction by approximate SVD: `A~ = A Z` with r = k.
pub fn reduce_approx_svd<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    eps: f64,
    rng: RngStream,
) -> Result<SketchOutput<S>> {
    check_eps(eps, 1.0)?;
    let z = fast_frobenius_svd(a, k, eps, rng)?.z;
    let a_tilde = a.matmul(&z)?;
    Ok(SketchOutput {
        a_tilde,
        method: ReductionMethod::ApproxSvd,
        r: k,
        operator: ReductionOperator::Dense(z),
        params: ReductionParams {
            k,
            eps,
            ..Default::default()
        },
    })
}

/// Gaussian baseline `A~ = A G / sqrt(r)`.
pub fn reduce_gaussian_jl<S: Scalar>(
    a: &DenseMatrix<S>,
    r: usize,
    rng: RngStream,
) -> Result<SketchOutput<S>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    check_reduces(r, a.cols())?;
    let g = gaussian_matrix::<S>(rng, a.cols(), r);
    let scale = S::one() / S::from_usize(r).unwrap().sqrt();
    let g = g.scale(scale);
    let a_tilde = a.matmul(&g)?;
    Ok(SketchOutput {
        a_tilde,
        method: ReductionMethod::GaussianJl,
        r,
        operator: ReductionOperator::Dense(g),
        params: ReductionParams::default(),
    })
}

fn check_eps(eps: f64, upper: f64) -> Result<()> {
    if !(0.0 < eps && eps < upper) {
        return Err(Error::InvalidArgument(format!(
            "eps = {} not in (0, {})",
            eps, upper
        )));
    }
    Ok(())
}

fn check_reduces(r: usize, d: usize) -> Result<()> {
    if r >= d {
        return Err(Error::InvalidArgument(format!(
            "target dimension r = {} does not reduce d = {}",
            r, d
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{frobenius_norm_sq, svd, DEFAULT_RANK_CUTOFF};
    use crate::testutil::deterministic_matrix;
    use crate::Matrix64;

    #[test]
    fn leverage_scores_diagonal_case() {
        let a = Matrix64::diag(&[3.0, 2.0, 1.0]);
        let s = leverage_scores(&a, 2).unwrap();
        assert!((s[0] - 0.5).abs() < 1e-10);
        assert!((s[1] - 0.5).abs() < 1e-10);
        assert!(s[2].abs() < 1e-10);
    }

    #[test]
    fn leverage_scores_orthonormal_rows_uniform() {
        // k = d = 3 orthonormal rows: V_k is square orthonormal.
        let a = Matrix64::identity(3).scale(2.0);
        let s = leverage_scores(&a, 3).unwrap();
        for v in s {
            assert!((v - 1.0 / 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn leverage_scores_match_projector_diagonal() {
        let a = deterministic_matrix(10, 6);
        let k = 3;
        let s = leverage_scores(&a, k).unwrap();
        assert!((s.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        // Oracle: diagonal of V_k V_k^T / k from a direct SVD.
        let f = svd(&a, DEFAULT_RANK_CUTOFF).unwrap();
        for i in 0..6 {
            let diag: f64 = (0..k).map(|j| f.v.get(i, j) * f.v.get(i, j)).sum();
            assert!((s[i] - diag / k as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn selection_columns_are_rescaled_originals() {
        let a = deterministic_matrix(8, 6);
        for out in [
            reduce_leverage_select(&a, 3, 0.5, 4, RngStream::new(11, 0)).unwrap(),
            reduce_sampling_select(&a, 2, 0.3, 0.005, RngStream::new(11, 1)).unwrap(),
        ] {
            let op = match &out.operator {
                ReductionOperator::Selection(op) => op,
                _ => panic!("selection method must record a sampling operator"),
            };
            assert_eq!(out.a_tilde.cols(), out.r);
            assert_eq!(out.a_tilde.rows(), a.rows());
            for (t, (&idx, &scale)) in op.indices.iter().zip(op.scales.iter()).enumerate() {
                for i in 0..a.rows() {
                    let expected = a.get(i, idx) * scale;
                    assert!((out.a_tilde.get(i, t) - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn leverage_select_unbiased_on_symmetric_input() {
        // Two identical-leverage features: E[A~ A~^T] = A A^T.
        let a = Matrix64::diag(&[2.0, 2.0]);
        let trials = 400;
        let mut acc = Matrix64::zeros(2, 2);
        for t in 0..trials as u64 {
            let out = reduce_leverage_select(&a, 2, 0.5, 4, RngStream::new(21, t)).unwrap();
            let gram = out.a_tilde.matmul(&out.a_tilde.transpose()).unwrap();
            acc = acc.add(&gram).unwrap();
        }
        let mean = acc.scale(1.0 / trials as f64);
        let target = a.matmul(&a.transpose()).unwrap();
        assert!(mean.max_abs_diff(&target) < 0.5, "bias {}", mean.max_abs_diff(&target));
    }

    #[test]
    fn leverage_select_concentrates_on_dominant_feature() {
        // One huge feature: its leverage approaches 1 (k = 1).
        let mut a = Matrix64::zeros(6, 4);
        for i in 0..6 {
            a.set(i, 0, 10.0);
            a.set(i, 1, 0.1 * (i as f64 + 1.0));
        }
        let scores = leverage_scores(&a, 1).unwrap();
        assert!(scores[0] > 0.9);
        let mut hits = 0usize;
        let mut total = 0usize;
        for t in 0..50u64 {
            let out = reduce_leverage_select(&a, 1, 0.5, 8, RngStream::new(31, t)).unwrap();
            if let ReductionOperator::Selection(op) = &out.operator {
                hits += op.indices.iter().filter(|&&i| i == 0).count();
                total += op.indices.len();
            }
        }
        let freq = hits as f64 / total as f64;
        assert!(
            (freq - scores[0]).abs() < 0.05,
            "freq {} vs score {}",
            freq,
            scores[0]
        );
    }

    #[test]
    fn leverage_select_deterministic() {
        let a = deterministic_matrix(7, 5);
        let o1 = reduce_leverage_select(&a, 2, 0.5, 3, RngStream::new(4, 4)).unwrap();
        let o2 = reduce_leverage_select(&a, 2, 0.5, 3, RngStream::new(4, 4)).unwrap();
        assert_eq!(o1.a_tilde.data(), o2.a_tilde.data());
    }

    #[test]
    fn leverage_theorem_r_grows_with_k() {
        assert!(leverage_theorem_r(4, 0.25, 1.0) > leverage_theorem_r(2, 0.25, 1.0));
        assert!(leverage_theorem_r(2, 0.1, 1.0) > leverage_theorem_r(2, 0.25, 1.0));
    }

    #[test]
    fn sampling_select_supported_on_spanning_features() {
        // Row space spanned exactly by features 0 and 1.
        let mut a = Matrix64::zeros(6, 5);
        for i in 0..6 {
            a.set(i, 0, (i as f64) + 1.0);
            a.set(i, 1, ((i * i) as f64) - 2.0);
        }
        let out = reduce_sampling_select(&a, 2, 0.3, 0.005, RngStream::new(6, 0)).unwrap();
        if let ReductionOperator::Selection(op) = &out.operator {
            for &i in &op.indices {
                assert!(i < 2, "selected feature {} outside the span", i);
            }
        } else {
            panic!("expected selection operator");
        }
    }

    #[test]
    fn sampling_select_r_formula_and_rejection() {
        let a = deterministic_matrix(6, 40);
        let k = 2;
        let eps = 0.3;
        let c1 = 0.05;
        let out = reduce_sampling_select(&a, k, eps, c1, RngStream::new(7, 0)).unwrap();
        let expected = (c1 * 4.0 * k as f64 * (200.0 * k as f64).ln() / (eps * eps)).ceil() as usize;
        assert_eq!(out.r, expected);
        // c1 = 1 at this scale would give r >= d: rejected.
        assert!(reduce_sampling_select(&a, k, eps, 1.0, RngStream::new(7, 0)).is_err());
        assert!(reduce_sampling_select(&a, k, 0.5, c1, RngStream::new(7, 0)).is_err());
    }

    #[test]
    fn projection_mailman_matches_naive() {
        let a = deterministic_matrix(9, 30);
        for variant in [ProjectionVariant::DenseSign, ProjectionVariant::Achlioptas] {
            let naive =
                reduce_random_projection(&a, 3, 0.3, 0.5, variant, false, RngStream::new(8, 3))
                    .unwrap();
            let fast =
                reduce_random_projection(&a, 3, 0.3, 0.5, variant, true, RngStream::new(8, 3))
                    .unwrap();
            assert_eq!(naive.r, fast.r);
            assert!(naive.a_tilde.max_abs_diff(&fast.a_tilde) < 1e-12);
        }
    }

    #[test]
    fn projection_r_formula_and_rejection() {
        let a = deterministic_matrix(5, 40);
        let out =
            reduce_random_projection(&a, 3, 0.3, 0.5, ProjectionVariant::DenseSign, false,
                RngStream::new(9, 0))
            .unwrap();
        assert_eq!(out.r, (0.5 * 3.0 / 0.09f64).ceil() as usize);
        assert!(reduce_random_projection(&a, 3, 0.3, 100.0, ProjectionVariant::DenseSign, false,
            RngStream::new(9, 0))
            .is_err());
    }

    #[test]
    fn projection_error_shrinks_with_r() {
        // Mean entrywise gram error at larger r is smaller (trend check).
        let a = deterministic_matrix(6, 60);
        let target = a.matmul(&a.transpose()).unwrap();
        let mean_err = |c2: f64| -> f64 {
            let mut total = 0.0;
            let trials = 100;
            for t in 0..trials as u64 {
                let out = reduce_random_projection(
                    &a,
                    1,
                    0.3,
                    c2,
                    ProjectionVariant::DenseSign,
                    false,
                    RngStream::new(77, t),
                )
                .unwrap();
                let gram = out.a_tilde.matmul(&out.a_tilde.transpose()).unwrap();
                total += gram.max_abs_diff(&target);
            }
            total / trials as f64
        };
        let coarse = mean_err(0.36); // r = 4
        let fine = mean_err(4.5); // r = 50
        assert!(fine < coarse, "error did not shrink: {} vs {}", coarse, fine);
    }

    #[test]
    fn approx_svd_preserves_exact_rank_energy() {
        // Rank-2 input, k = 2: no energy lost.
        let b = deterministic_matrix(7, 2);
        let c = deterministic_matrix(2, 5);
        let a = b.matmul(&c).unwrap();
        let out = reduce_approx_svd(&a, 2, 0.5, RngStream::new(10, 0)).unwrap();
        assert_eq!(out.r, 2);
        let lost =
            (frobenius_norm_sq(&a) - frobenius_norm_sq(&out.a_tilde)).abs() / frobenius_norm_sq(&a);
        assert!(lost < 1e-8);
    }

    #[test]
    fn approx_svd_is_nonexpansive_on_pairs() {
        let a = deterministic_matrix(8, 6);
        let out = reduce_approx_svd(&a, 3, 0.4, RngStream::new(12, 0)).unwrap();
        for i in 0..8 {
            for j in (i + 1)..8 {
                let full: f64 = (0..6)
                    .map(|c| (a.get(i, c) - a.get(j, c)).powi(2))
                    .sum();
                let red: f64 = (0..3)
                    .map(|c| (out.a_tilde.get(i, c) - out.a_tilde.get(j, c)).powi(2))
                    .sum();
                assert!(red <= full + 1e-10);
            }
        }
    }

    #[test]
    fn gaussian_jl_row_norms_unbiased() {
        let a = deterministic_matrix(4, 20);
        let trials = 300;
        let mut mean = vec![0.0; 4];
        for t in 0..trials as u64 {
            let out = reduce_gaussian_jl(&a, 8, RngStream::new(14, t)).unwrap();
            for i in 0..4 {
                mean[i] += out.a_tilde.row_norm_sq(i) / trials as f64;
            }
        }
        for i in 0..4 {
            let exact = a.row_norm_sq(i);
            assert!(
                (mean[i] - exact).abs() < 0.15 * exact,
                "row {}: {} vs {}",
                i,
                mean[i],
                exact
            );
        }
    }

    #[test]
    fn gaussian_jl_distance_distortion() {
        // n = 40 points, r = ceil(8 ln n / 0.25^2): max pairwise relative
        // distortion <= 0.35 in >= 95% of seeds.
        let n = 40;
        let d = 600;
        let a = deterministic_matrix(n, d);
        let r = (8.0 * (n as f64).ln() / 0.0625).ceil() as usize;
        let mut ok = 0;
        let seeds = 40;
        for t in 0..seeds as u64 {
            let out = reduce_gaussian_jl(&a, r, RngStream::new(15, t)).unwrap();
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    let full: f64 = (0..d)
                        .map(|c| (a.get(i, c) - a.get(j, c)).powi(2))
                        .sum();
                    let red: f64 = (0..r)
                        .map(|c| (out.a_tilde.get(i, c) - out.a_tilde.get(j, c)).powi(2))
                        .sum();
                    worst = worst.max((red / full - 1.0).abs());
                }
            }
            if worst <= 0.35 {
                ok += 1;
            }
        }
        assert!(
            ok as f64 >= 0.95 * seeds as f64,
            "only {}/{} seeds within distortion budget",
            ok,
            seeds
        );
    }

    #[test]
    fn gaussian_jl_rejects_non_reducing_r() {
        let a = deterministic_matrix(4, 6);
        assert!(reduce_gaussian_jl(&a, 6, RngStream::new(0, 0)).is_err());
        assert!(reduce_gaussian_jl(&a, 0, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn reducers_leave_input_unmodified() {
        let a = deterministic_matrix(6, 12);
        let copy = a.clone();
        let _ = reduce_leverage_select(&a, 2, 0.5, 4, RngStream::new(1, 0)).unwrap();
        let _ = reduce_sampling_select(&a, 2, 0.3, 0.01, RngStream::new(1, 1)).unwrap();
        let _ = reduce_random_projection(&a, 2, 0.3, 0.3, ProjectionVariant::DenseSign, false,
            RngStream::new(1, 2))
            .unwrap();
        let _ = reduce_approx_svd(&a, 2, 0.5, RngStream::new(1, 3)).unwrap();
        let _ = reduce_gaussian_jl(&a, 4, RngStream::new(1, 4)).unwrap();
        assert_eq!(a.data(), copy.data());
    }

    #[test]
    fn lemma_norm_growth_rarely_exceeded() {
        // ||Y Pi||_F^2 >= (1 + eps) ||Y||_F^2 happens rarely: <= 4% of
        // 500 trials at eps = 0.3, r = ceil(100 k / eps^2).
        let k = 1;
        let eps = 0.3;
        let d = 40;
        let r = (100.0 * k as f64 / (eps * eps)).ceil() as usize;
        let y = deterministic_matrix(5, d);
        let base = frobenius_norm_sq(&y);
        let trials = 500;
        let mut violations = 0;
        for t in 0..trials as u64 {
            let pi: Matrix64 = sign_matrix(RngStream::new(55, t), d, r);
            let yp = y.matmul(&pi).unwrap();
            if frobenius_norm_sq(&yp) >= (1.0 + eps) * base {
                violations += 1;
            }
        }
        assert!(
            violations as f64 <= 0.04 * trials as f64,
            "{} violations in {} trials",
            violations,
            trials
        );
    }

    #[test]
    fn lemma_projected_basis_singular_values_concentrate() {
        // sigma_i^2(V_k^T Pi) within [1 - 2 eps, 1 + 2 eps] for all i in
        // >= 90% of 500 trials at r = ceil(100 k / eps^2).
        let k = 2;
        let eps = 0.3;
        let d = 50;
        let r = (100.0 * k as f64 / (eps * eps)).ceil() as usize;
        let a = deterministic_matrix(30, d);
        let vk = top_right_singular_vectors(&a, k).unwrap();
        let trials = 500;
        let mut ok = 0;
        for t in 0..trials as u64 {
            let pi: Matrix64 = sign_matrix(RngStream::new(66, t), d, r);
            let m = vk.transpose().matmul(&pi).unwrap();
            let f = svd(&m, DEFAULT_RANK_CUTOFF).unwrap();
            let within = (0..k).all(|i| {
                let s2 = f.sigma[i] * f.sigma[i];
                (1.0 - 2.0 * eps..=1.0 + 2.0 * eps).contains(&s2)
            });
            if within && f.rank == k {
                ok += 1;
            }
        }
        assert!(
            ok as f64 >= 0.90 * trials as f64,
            "only {}/{} trials concentrated",
            ok,
            trials
        );
    }
}
