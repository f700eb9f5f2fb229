//! Shared unit-test helpers.

use crate::Matrix64;

/// Fixed pseudo-random matrix; a tiny LCG keeps the helper independent of
/// the library's own RNG.
pub(crate) fn deterministic_matrix(rows: usize, cols: usize) -> Matrix64 {
    let mut state = 0x243F6A8885A308D3u64 ^ (((rows as u64) << 32) | cols as u64);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        data.push(((state >> 11) as f64) / ((1u64 << 53) as f64) * 2.0 - 1.0);
    }
    Matrix64::new(rows, cols, data).unwrap()
}
