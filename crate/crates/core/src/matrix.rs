//! Dense row-major matrices and the deterministic linear-algebra kernels:
//! norms, products, QR orthonormalization, one-sided Jacobi SVD, best
//! rank-k approximation and the Moore-Penrose pseudoinverse.

use std::fmt;

use crate::error::{Error, Result};
use crate::Scalar;

/// Relative threshold below which singular values are treated as zero.
pub const DEFAULT_RANK_CUTOFF: f64 = 1e-12;

/// Maximum number of one-sided Jacobi sweeps before reporting failure.
const MAX_JACOBI_SWEEPS: usize = 128;

/// Dense real matrix in row-major order. All entries are finite; this is
/// checked at construction.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> fmt::Debug for DenseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(8) {
                write!(f, "{:>12.5} ", self.get(i, j))?;
            }
            writeln!(f, "{}", if self.cols > 8 { "..." } else { "" })?;
        }
        if self.rows > 8 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> DenseMatrix<S> {
    /// Build from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        for (idx, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / cols.max(1),
                    col: idx % cols.max(1),
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Square diagonal matrix from the given entries.
    pub fn diag(entries: &[S]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    c
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(r, c, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[S]) {
        debug_assert_eq!(col.len(), self.rows);
        for (i, &v) in col.iter().enumerate() {
            self.set(i, j, v);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let lhs_row = self.row(i);
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (kk, &a) in lhs_row.iter().enumerate() {
                if a == S::zero() {
                    continue;
                }
                let rhs_row = rhs.row(kk);
                for (j, &b) in rhs_row.iter().enumerate() {
                    out_row[j] = out_row[j] + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    /// Squared Euclidean norm of row `i`.
    pub fn row_norm_sq(&self, i: usize) -> S {
        self.row(i).iter().map(|&v| v * v).fold(S::zero(), |a, b| a + b)
    }

    /// Maximum absolute entry of the elementwise difference.
    pub fn max_abs_diff(&self, rhs: &Self) -> S {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(S::zero(), |m, v| if v > m { v } else { m })
    }
}

/// Thin SVD of a matrix restricted to its numerical rank:
/// `A = U * diag(sigma) * V^T` with orthonormal `U` (m x rank) and
/// `V` (n x rank), and `sigma` sorted nonincreasing.
#[derive(Clone, Debug)]
pub struct SvdFactors<S: Scalar> {
    pub u: DenseMatrix<S>,
    pub sigma: Vec<S>,
    pub v: DenseMatrix<S>,
    pub rank: usize,
}

/// `sqrt` of the sum of squared entries.
pub fn frobenius_norm<S: Scalar>(m: &DenseMatrix<S>) -> S {
    frobenius_norm_sq(m).sqrt()
}

pub fn frobenius_norm_sq<S: Scalar>(m: &DenseMatrix<S>) -> S {
    m.data().iter().map(|&v| v * v).fold(S::zero(), |a, b| a + b)
}

/// Thin SVD via one-sided Jacobi. Singular values at or below
/// `rank_cutoff * sigma_max` are dropped together with their singular
/// vectors, so the returned factors cover exactly the numerical rank.
pub fn svd<S: Scalar>(m: &DenseMatrix<S>, rank_cutoff: f64) -> Result<SvdFactors<S>> {
    if rank_cutoff < 0.0 {
        return Err(Error::InvalidArgument(
            "rank_cutoff must be nonnegative".into(),
        ));
    }
    // One-sided Jacobi wants at least as many rows as columns.
    if m.rows() < m.cols() {
        let f = svd(&m.transpose(), rank_cutoff)?;
        return Ok(SvdFactors {
            u: f.v,
            sigma: f.sigma,
            v: f.u,
            rank: f.rank,
        });
    }

    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<S>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<S>> = (0..cols)
        .map(|j| {
            let mut e = vec![S::zero(); cols];
            e[j] = S::one();
            e
        })
        .collect();

    let tol = S::epsilon() * S::from_f64(64.0).unwrap();
    let mut converged = cols < 2;
    let mut sweeps = 0;
    while !converged {
        if sweeps >= MAX_JACOBI_SWEEPS {
            return Err(Error::SvdNonConvergence {
                rows,
                cols,
                sweeps,
            });
        }
        sweeps += 1;
        converged = true;
        for p in 0..cols - 1 {
            for q in p + 1..cols {
                let mut alpha = S::zero();
                let mut beta = S::zero();
                let mut gamma = S::zero();
                for i in 0..rows {
                    let ap = a[p][i];
                    let aq = a[q][i];
                    alpha = alpha + ap * ap;
                    beta = beta + aq * aq;
                    gamma = gamma + ap * aq;
                }
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                let zeta = (beta - alpha) / (S::from_f64(2.0).unwrap() * gamma);
                let t = {
                    let denom = zeta.abs() + (S::one() + zeta * zeta).sqrt();
                    let t = S::one() / denom;
                    if zeta < S::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let ap = a[p][i];
                    let aq = a[q][i];
                    a[p][i] = c * ap - s * aq;
                    a[q][i] = s * ap + c * aq;
                }
                for i in 0..cols {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<S> = a
        .iter()
        .map(|col| col.iter().map(|&x| x * x).fold(S::zero(), |u, w| u + w).sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let sigma_max = norms[order[0]];
    let cutoff = sigma_max * S::from_f64(rank_cutoff).unwrap();
    let retained: Vec<usize> = order
        .into_iter()
        .filter(|&j| norms[j] > cutoff && norms[j] > S::zero())
        .collect();
    let rank = retained.len();

    let mut u = DenseMatrix::zeros(rows, rank);
    let mut vk = DenseMatrix::zeros(cols, rank);
    let mut sigma = Vec::with_capacity(rank);
    for (out_j, &j) in retained.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        for i in 0..rows {
            u.set(i, out_j, a[j][i] / s);
        }
        for i in 0..cols {
            vk.set(i, out_j, v[j][i]);
        }
    }
    Ok(SvdFactors {
        u,
        sigma,
        v: vk,
        rank,
    })
}

/// Best rank-k approximation `A_k = A V_k V_k^T` (Eckart-Young).
pub fn best_rank_k<S: Scalar>(m: &DenseMatrix<S>, k: usize) -> Result<DenseMatrix<S>> {
    if k < 1 || k > m.rows().min(m.cols()) {
        return Err(Error::InvalidArgument(format!(
            "k = {} out of range [1, {}]",
            k,
            m.rows().min(m.cols())
        )));
    }
    let f = svd(m, DEFAULT_RANK_CUTOFF)?;
    let kk = k.min(f.rank);
    if kk == f.rank {
        // A already has rank <= k.
        return Ok(m.clone());
    }
    let mut vk = DenseMatrix::zeros(m.cols(), kk);
    for j in 0..kk {
        for i in 0..m.cols() {
            vk.set(i, j, f.v.get(i, j));
        }
    }
    let av = m.matmul(&vk)?;
    av.matmul(&vk.transpose())
}

/// Top-k right singular vectors as a `cols x k` matrix.
pub fn top_right_singular_vectors<S: Scalar>(
    m: &DenseMatrix<S>,
    k: usize,
) -> Result<DenseMatrix<S>> {
    let f = svd(m, DEFAULT_RANK_CUTOFF)?;
    if k > f.rank {
        return Err(Error::InvalidArgument(format!(
            "k = {} exceeds the numerical rank {}",
            k, f.rank
        )));
    }
    let mut vk = DenseMatrix::zeros(m.cols(), k);
    for j in 0..k {
        for i in 0..m.cols() {
            vk.set(i, j, f.v.get(i, j));
        }
    }
    Ok(vk)
}

/// Orthonormalize the columns of `M` by modified Gram-Schmidt with one
/// re-orthogonalization pass. Fails if a column is numerically dependent
/// on the preceding ones.
pub fn orthonormalize_columns<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    match gram_schmidt(m, false)? {
        (q, None) => Ok(q),
        (_, Some(col)) => Err(Error::RankDeficient { col }),
    }
}

/// Like [`orthonormalize_columns`] but silently drops dependent columns,
/// returning an orthonormal basis for the range of `M` (possibly with
/// fewer columns than `M`).
pub fn orthonormal_basis<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    Ok(gram_schmidt(m, true)?.0)
}

fn gram_schmidt<S: Scalar>(
    m: &DenseMatrix<S>,
    drop_deficient: bool,
) -> Result<(DenseMatrix<S>, Option<usize>)> {
    let rows = m.rows();
    let mut basis: Vec<Vec<S>> = Vec::new();
    let deficiency_tol = S::from_f64(1e-10).unwrap();
    for j in 0..m.cols() {
        let mut col = m.column(j);
        let norm0 = vec_norm(&col);
        // Two MGS passes keep Q^T Q = I well below the 1e-10 contract.
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(&col, b);
                for i in 0..rows {
                    col[i] = col[i] - proj * b[i];
                }
            }
        }
        let norm = vec_norm(&col);
        if norm <= norm0 * deficiency_tol || norm == S::zero() {
            if drop_deficient {
                continue;
            }
            return Ok((DenseMatrix::zeros(0, 0), Some(j)));
        }
        for x in col.iter_mut() {
            *x = *x / norm;
        }
        basis.push(col);
    }
    let mut q = DenseMatrix::zeros(rows, basis.len());
    for (j, b) in basis.iter().enumerate() {
        q.set_column(j, b);
    }
    Ok((q, None))
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| x * y)
        .fold(S::zero(), |u, w| u + w)
}

fn vec_norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

/// Moore-Penrose pseudoinverse via the thin SVD.
pub fn pseudoinverse<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let f = svd(m, DEFAULT_RANK_CUTOFF)?;
    // M^+ = V * diag(1/sigma) * U^T
    let mut out = DenseMatrix::zeros(m.cols(), m.rows());
    for i in 0..m.cols() {
        for j in 0..m.rows() {
            let mut acc = S::zero();
            for l in 0..f.rank {
                acc = acc + f.v.get(i, l) * f.u.get(j, l) / f.sigma[l];
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Largest singular value.
pub fn spectral_norm<S: Scalar>(m: &DenseMatrix<S>) -> Result<S> {
    let f = svd(m, DEFAULT_RANK_CUTOFF)?;
    Ok(f.sigma.first().copied().unwrap_or_else(S::zero))
}
