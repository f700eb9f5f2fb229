//! Vose's alias method: O(n) construction, O(1) categorical draws.

use crate::error::{Error, Result};
use crate::rng::StreamRng;

/// Alias table for a fixed categorical distribution over `0..n`.
#[derive(Clone, Debug)]
pub struct AliasTable {
    n: usize,
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    /// Build from a probability vector. Entries must be nonnegative and
    /// sum to 1 within 1e-9.
    pub fn build(p: &[f64]) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::BadDistribution("empty probability vector".into()));
        }
        let mut sum = 0.0;
        for (i, &pi) in p.iter().enumerate() {
            if !pi.is_finite() || pi < 0.0 {
                return Err(Error::BadDistribution(format!(
                    "entry {} is {} (must be finite and >= 0)",
                    i, pi
                )));
            }
            sum += pi;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::BadDistribution(format!(
                "probabilities sum to {} (must be 1 +- 1e-9)",
                sum
            )));
        }

        let mut prob = vec![0.0; n];
        let mut alias = vec![0usize; n];
        // Scaled probabilities; buckets below 1 borrow from buckets above.
        let mut scaled: Vec<f64> = p.iter().map(|&pi| pi * n as f64 / sum).collect();
        let mut small: Vec<usize> = Vec::with_capacity(n);
        let mut large: Vec<usize> = Vec::with_capacity(n);
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            large.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                small.push(l);
            } else {
                large.push(l);
            }
        }
        for &i in small.iter().chain(large.iter()) {
            prob[i] = 1.0;
        }
        Ok(Self { n, prob, alias })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// One O(1) categorical draw.
    pub fn sample(&self, rng: &mut StreamRng) -> usize {
        let i = rng.below(self.n);
        if rng.uniform() < self.prob[i] {
            i
        } else {
            self.alias[i]
        }
    }
}
