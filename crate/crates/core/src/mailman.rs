//! Mailman multiplication: a finite-alphabet m x n matrix `A` decomposes
//! as `A = U * P` where `U` is the universal column matrix enumerating all
//! S^m symbol strings and `P` routes each column of `A` to its universal
//! column. `A x = U (P x)` then costs O(n) scalar operations instead of
//! O(mn).
//!
//! Column-order convention: column `i` of `U` encodes `i - 1` in base S,
//! most significant digit first, with digit `l` mapped to
//! `alphabet[S - 1 - l]`. This reproduces the 1x2 base case `U_1 = (1 0)`
//! for the binary alphabet {0, 1} and is pinned by a golden test for
//! n in {2, 4, 8}.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::Scalar;

/// Cap on S^m for a single plan block.
const MAX_UNIVERSAL_COLS: usize = 1 << 26;

/// Decomposition of a finite-alphabet matrix block as (alphabet, m,
/// correspondence into the universal column matrix).
#[derive(Clone, Debug)]
pub struct MailmanPlan<S: Scalar> {
    alphabet: Vec<S>,
    /// Row count of the planned block.
    m: usize,
    /// Number of universal columns, S^m.
    n_universal: usize,
    /// For each column j of the source matrix, the 0-based universal
    /// column index it equals.
    correspondence: Vec<usize>,
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > MAX_UNIVERSAL_COLS {
            return None;
        }
    }
    Some(acc)
}

fn validate_alphabet<S: Scalar>(alphabet: &[S]) -> Result<()> {
    if alphabet.len() < 2 {
        return Err(Error::InvalidArgument(
            "alphabet must contain at least two symbols".into(),
        ));
    }
    for (i, a) in alphabet.iter().enumerate() {
        for b in alphabet.iter().skip(i + 1) {
            if a == b {
                return Err(Error::InvalidArgument(
                    "alphabet symbols must be distinct".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Column `i` (1-based, `1 <= i <= S^m`) of the universal column matrix.
pub fn universal_column<S: Scalar>(alphabet: &[S], m: usize, i: usize) -> Result<Vec<S>> {
    validate_alphabet(alphabet)?;
    let sv = alphabet.len();
    let n = checked_pow(sv, m).ok_or_else(|| {
        Error::InvalidArgument(format!("S^m too large (S = {}, m = {})", sv, m))
    })?;
    if i < 1 || i > n {
        return Err(Error::InvalidArgument(format!(
            "column index {} out of range [1, {}]",
            i, n
        )));
    }
    let mut digits = vec![0usize; m];
    let mut rem = i - 1;
    for l in (0..m).rev() {
        digits[l] = rem % sv;
        rem /= sv;
    }
    Ok(digits.iter().map(|&d| alphabet[sv - 1 - d]).collect())
}

/// The full universal column matrix, m x S^m.
pub fn universal_matrix<S: Scalar>(alphabet: &[S], m: usize) -> Result<DenseMatrix<S>> {
    validate_alphabet(alphabet)?;
    let sv = alphabet.len();
    let n = checked_pow(sv, m).ok_or_else(|| {
        Error::InvalidArgument(format!("S^m too large (S = {}, m = {})", sv, m))
    })?;
    let mut u = DenseMatrix::zeros(m, n);
    for i in 1..=n {
        let col = universal_column(alphabet, m, i)?;
        u.set_column(i - 1, &col);
    }
    Ok(u)
}

impl<S: Scalar> MailmanPlan<S> {
    /// Decompose `a` over `alphabet`; O(mn), touching each entry once.
    pub fn build(a: &DenseMatrix<S>, alphabet: &[S]) -> Result<Self> {
        validate_alphabet(alphabet)?;
        let sv = alphabet.len();
        let m = a.rows();
        let n_universal = checked_pow(sv, m).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "block of {} rows over {} symbols exceeds the universal-column cap",
                m, sv
            ))
        })?;
        let mut correspondence = Vec::with_capacity(a.cols());
        for j in 0..a.cols() {
            let mut idx = 0usize;
            for i in 0..m {
                let v = a.get(i, j);
                let digit = alphabet
                    .iter()
                    .position(|&s| s == v)
                    .map(|pos| sv - 1 - pos)
                    .ok_or(Error::AlphabetViolation { row: i, col: j })?;
                idx = idx * sv + digit;
            }
            correspondence.push(idx);
        }
        Ok(Self {
            alphabet: alphabet.to_vec(),
            m,
            n_universal,
            correspondence,
        })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.correspondence.len()
    }

    pub fn n_universal(&self) -> usize {
        self.n_universal
    }

    pub fn correspondence(&self) -> &[usize] {
        &self.correspondence
    }

    /// Rebuild the source matrix exactly from the plan.
    pub fn reconstruct(&self) -> Result<DenseMatrix<S>> {
        let mut out = DenseMatrix::zeros(self.m, self.cols());
        for (j, &idx) in self.correspondence.iter().enumerate() {
            let col = universal_column(&self.alphabet, self.m, idx + 1)?;
            out.set_column(j, &col);
        }
        Ok(out)
    }

    /// `A x` through the decomposition; equals the naive product.
    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        Ok(self.apply_counted(x)?.0)
    }

    /// `A x` plus the scalar add/multiply count of the recursive
    /// universal-matrix apply (the `T(n) <= 4n` quantity).
    pub fn apply_counted(&self, x: &[S]) -> Result<(Vec<S>, u64)> {
        if x.len() != self.cols() {
            return Err(Error::Dimension(format!(
                "plan covers {} columns, vector has {}",
                self.cols(),
                x.len()
            )));
        }
        // z = P x: route each letter to its address.
        let mut z = vec![S::zero(); self.n_universal];
        for (j, &idx) in self.correspondence.iter().enumerate() {
            z[idx] = z[idx] + x[j];
        }
        let mut ops = 0u64;
        let y = apply_universal(&self.alphabet, self.m, &z, &mut ops);
        Ok((y, ops))
    }
}

/// `U_n z` by the blockwise recursion; `ops` counts scalar additions and
/// multiplications performed.
fn apply_universal<S: Scalar>(alphabet: &[S], m: usize, z: &[S], ops: &mut u64) -> Vec<S> {
    if m == 0 {
        return Vec::new();
    }
    let sv = alphabet.len();
    let chunk = z.len() / sv;
    debug_assert_eq!(chunk * sv, z.len());

    // Top row: sum each leading-symbol block, scale by its symbol.
    let mut top = S::zero();
    let mut first_term = true;
    let mut combined = vec![S::zero(); chunk];
    for b in 0..sv {
        let block = &z[b * chunk..(b + 1) * chunk];
        let symbol = alphabet[sv - 1 - b];
        if symbol != S::zero() {
            let mut s = block[0];
            for &v in &block[1..] {
                s = s + v;
                *ops += 1;
            }
            let term = if symbol == S::one() {
                s
            } else {
                *ops += 1;
                symbol * s
            };
            if first_term {
                top = term;
                first_term = false;
            } else {
                top = top + term;
                *ops += 1;
            }
        }
        if m > 1 {
            if b == 0 {
                combined.copy_from_slice(block);
            } else {
                for (c, &v) in combined.iter_mut().zip(block.iter()) {
                    *c = *c + v;
                    *ops += 1;
                }
            }
        }
    }

    let mut out = Vec::with_capacity(m);
    out.push(top);
    if m > 1 {
        out.extend(apply_universal(alphabet, m - 1, &combined, ops));
    }
    out
}

/// `A * B` where `A` takes entries in `alphabet`. `A` is split into row
/// blocks of height floor(log_S(cols)) so each block's universal matrix
/// stays no wider than `A` itself.
pub fn mailman_matmul<S: Scalar>(
    a: &DenseMatrix<S>,
    b: &DenseMatrix<S>,
    alphabet: &[S],
) -> Result<DenseMatrix<S>> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    validate_alphabet(alphabet)?;
    let sv = alphabet.len();
    let mut block_rows = 1usize;
    while checked_pow(sv, block_rows + 1).map_or(false, |n| n <= a.cols().max(sv)) {
        block_rows += 1;
    }

    let mut plans = Vec::new();
    let mut start = 0;
    while start < a.rows() {
        let h = block_rows.min(a.rows() - start);
        let mut block = DenseMatrix::zeros(h, a.cols());
        for i in 0..h {
            for j in 0..a.cols() {
                block.set(i, j, a.get(start + i, j));
            }
        }
        plans.push((start, MailmanPlan::build(&block, alphabet)?));
        start += h;
    }

    let mut out = DenseMatrix::zeros(a.rows(), b.cols());
    for j in 0..b.cols() {
        let x = b.column(j);
        for (start, plan) in &plans {
            let y = plan.apply(&x)?;
            for (i, &v) in y.iter().enumerate() {
                out.set(start + i, j, v);
            }
        }
    }
    Ok(out)
}
