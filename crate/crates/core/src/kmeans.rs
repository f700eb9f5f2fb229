//! Lloyd's algorithm, the indicator-matrix form of the k-means objective,
//! a restart wrapper with D^2 seeding, and an exact brute-force optimum
//! for small instances.

use crate::error::{Error, Result};
use crate::matrix::{frobenius_norm_sq, DenseMatrix};
use crate::rng::RngStream;
use crate::Scalar;

/// Largest n the set-partition enumeration accepts.
pub const MAX_ENUMERATION_POINTS: usize = 14;

/// Default relative cost-decrease tolerance for Lloyd iterations.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default Lloyd iteration cap.
pub const DEFAULT_MAX_ITER: usize = 300;

/// Cluster membership for n points in k nonempty clusters, stored as an
/// assignment vector plus cluster sizes. Materializes to the n x k
/// indicator matrix X with X_ij = 1/sqrt(s_j) iff point i is in cluster j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterIndicator {
    assign: Vec<usize>,
    sizes: Vec<usize>,
}

impl ClusterIndicator {
    /// Validate labels in [0, k) with every cluster nonempty.
    pub fn from_assignment(assign: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 || assign.is_empty() {
            return Err(Error::InvalidArgument(
                "need at least one point and one cluster".into(),
            ));
        }
        let mut sizes = vec![0usize; k];
        for (i, &label) in assign.iter().enumerate() {
            if label >= k {
                return Err(Error::InvalidArgument(format!(
                    "point {} has label {} >= k = {}",
                    i, label, k
                )));
            }
            sizes[label] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::EmptyCluster { cluster: empty });
        }
        Ok(Self { assign, sizes })
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assign
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// The n x k indicator matrix X.
    pub fn materialize<S: Scalar>(&self) -> DenseMatrix<S> {
        let mut x = DenseMatrix::zeros(self.n(), self.k());
        for (i, &label) in self.assign.iter().enumerate() {
            let v = S::one() / S::from_usize(self.sizes[label]).unwrap().sqrt();
            x.set(i, label, v);
        }
        x
    }

    /// Cluster centroids, k x d.
    pub fn centroids<S: Scalar>(&self, a: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
        if a.rows() != self.n() {
            return Err(Error::Dimension(format!(
                "indicator covers {} points, matrix has {} rows",
                self.n(),
                a.rows()
            )));
        }
        let mut c = DenseMatrix::zeros(self.k(), a.cols());
        for (i, &label) in self.assign.iter().enumerate() {
            for j in 0..a.cols() {
                c.set(label, j, c.get(label, j) + a.get(i, j));
            }
        }
        for (label, &s) in self.sizes.iter().enumerate() {
            let inv = S::one() / S::from_usize(s).unwrap();
            for j in 0..a.cols() {
                c.set(label, j, c.get(label, j) * inv);
            }
        }
        Ok(c)
    }
}

/// k-means objective F(A, X) = ||A - X X^T A||_F^2, computed as the sum of
/// squared point-to-centroid distances. In debug builds the matrix-residual
/// formulation is recomputed and cross-checked.
pub fn cost<S: Scalar>(a: &DenseMatrix<S>, indicator: &ClusterIndicator) -> Result<S> {
    let centroids = indicator.centroids(a)?;
    let mut total = S::zero();
    for (i, &label) in indicator.assignments().iter().enumerate() {
        for j in 0..a.cols() {
            let diff = a.get(i, j) - centroids.get(label, j);
            total = total + diff * diff;
        }
    }
    #[cfg(debug_assertions)]
    {
        let residual = cost_matrix_residual(a, indicator)?;
        let scale = frobenius_norm_sq(a).to_f64_lossy().max(1.0);
        debug_assert!(
            (total.to_f64_lossy() - residual.to_f64_lossy()).abs() <= 1e-8 * scale,
            "cost formulations disagree: {} vs {}",
            total,
            residual
        );
    }
    Ok(total)
}

/// The matrix-residual formulation ||A - X X^T A||_F^2.
pub fn cost_matrix_residual<S: Scalar>(
    a: &DenseMatrix<S>,
    indicator: &ClusterIndicator,
) -> Result<S> {
    let x = indicator.materialize::<S>();
    let xta = x.transpose().matmul(a)?;
    let xxta = x.matmul(&xta)?;
    Ok(frobenius_norm_sq(&a.sub(&xxta)?))
}

/// One k-means run: the final partition, its centroids, cost, and the
/// number of Lloyd iterations performed.
#[derive(Clone, Debug)]
pub struct KmeansSolution<S: Scalar> {
    pub indicator: ClusterIndicator,
    pub centroids: DenseMatrix<S>,
    pub cost: S,
    pub iterations: usize,
}

/// Lloyd's algorithm from explicit initial centroids.
///
/// Assignment ties break toward the lowest cluster index. Empty clusters
/// are repaired by moving in the point currently farthest from its own
/// centroid. Terminates when the assignment is stable, the relative cost
/// decrease drops below `tol`, or `max_iter` is reached; the cost sequence
/// is nonincreasing.
pub fn lloyd<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    init: &DenseMatrix<S>,
    max_iter: usize,
    tol: f64,
) -> Result<KmeansSolution<S>> {
    let n = a.rows();
    let d = a.cols();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {} exceeds the number of points {}",
            k, n
        )));
    }
    if init.rows() != k || init.cols() != d {
        return Err(Error::Dimension(format!(
            "init centroids are {}x{}, expected {}x{}",
            init.rows(),
            init.cols(),
            k,
            d
        )));
    }

    let mut centroids = init.clone();
    let mut assign: Vec<usize> = vec![usize::MAX; n];
    let mut prev_cost: Option<S> = None;
    let mut iterations = 0;

    loop {
        iterations += 1;
        let new_assign: Vec<usize> = (0..n)
            .map(|i| nearest_centroid(a, i, &centroids))
            .collect();
        let mut assign_next = new_assign;
        repair_empty_clusters(a, k, &centroids, &mut assign_next);
        let stable = assign_next == assign;
        assign = assign_next;

        let indicator = ClusterIndicator::from_assignment(assign.clone(), k)?;
        centroids = indicator.centroids(a)?;
        let c = cost(a, &indicator)?;

        let small_decrease = prev_cost.map_or(false, |p| {
            let p = p.to_f64_lossy();
            let c = c.to_f64_lossy();
            p - c <= tol * p.max(f64::MIN_POSITIVE)
        });
        prev_cost = Some(c);

        if stable || small_decrease || iterations >= max_iter {
            return Ok(KmeansSolution {
                indicator,
                centroids,
                cost: c,
                iterations,
            });
        }
    }
}

fn nearest_centroid<S: Scalar>(a: &DenseMatrix<S>, i: usize, centroids: &DenseMatrix<S>) -> usize {
    let mut best = 0;
    let mut best_d = S::infinity();
    for l in 0..centroids.rows() {
        let mut dist = S::zero();
        for j in 0..a.cols() {
            let diff = a.get(i, j) - centroids.get(l, j);
            dist = dist + diff * diff;
        }
        if dist < best_d {
            best_d = dist;
            best = l;
        }
    }
    best
}

fn repair_empty_clusters<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    centroids: &DenseMatrix<S>,
    assign: &mut [usize],
) {
    loop {
        let mut sizes = vec![0usize; k];
        for &l in assign.iter() {
            sizes[l] += 1;
        }
        let empty = match sizes.iter().position(|&s| s == 0) {
            Some(e) => e,
            None => return,
        };
        // Reassign the point farthest from its centroid, among clusters
        // that can spare one.
        let mut far_point = None;
        let mut far_dist = S::neg_infinity();
        for (i, &l) in assign.iter().enumerate() {
            if sizes[l] <= 1 {
                continue;
            }
            let mut dist = S::zero();
            for j in 0..a.cols() {
                let diff = a.get(i, j) - centroids.get(l, j);
                dist = dist + diff * diff;
            }
            if dist > far_dist {
                far_dist = dist;
                far_point = Some(i);
            }
        }
        match far_point {
            Some(i) => assign[i] = empty,
            None => return, // fewer distinct points than clusters
        }
    }
}

/// Best-of-restarts Lloyd with D^2 (k-means++ style) seeding. Restart `t`
/// uses the stream `rng.substream(t)`, so results are reproducible and
/// restarts are independent.
pub fn gamma_approx_kmeans<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    restarts: usize,
    rng: RngStream,
) -> Result<KmeansSolution<S>> {
    kmeans_with_options(a, k, restarts, DEFAULT_MAX_ITER, DEFAULT_TOL, rng)
}

/// As `gamma_approx_kmeans`, with explicit Lloyd termination settings.
pub fn kmeans_with_options<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    restarts: usize,
    max_iter: usize,
    tol: f64,
    rng: RngStream,
) -> Result<KmeansSolution<S>> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be >= 1".into()));
    }
    let mut best: Option<KmeansSolution<S>> = None;
    for t in 0..restarts {
        let init = dsquared_seeding(a, k, rng.substream(t as u64))?;
        let sol = lloyd(a, k, &init, max_iter, tol)?;
        if best.as_ref().map_or(true, |b| sol.cost < b.cost) {
            best = Some(sol);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

/// k-means++ seeding: first center uniform, then proportional to squared
/// distance from the chosen set.
fn dsquared_seeding<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    rng: RngStream,
) -> Result<DenseMatrix<S>> {
    let n = a.rows();
    let d = a.cols();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {} exceeds the number of points {}",
            k, n
        )));
    }
    let mut g = rng.generator();
    let mut centers = DenseMatrix::zeros(k, d);
    let first = g.below(n);
    for j in 0..d {
        centers.set(0, j, a.get(first, j));
    }
    let mut dist_sq: Vec<f64> = (0..n)
        .map(|i| point_center_dist_sq(a, i, &centers, 0))
        .collect();
    for c in 1..k {
        let total: f64 = dist_sq.iter().sum();
        let pick = if total <= 0.0 {
            // All remaining points coincide with chosen centers.
            g.below(n)
        } else {
            let mut target = g.uniform() * total;
            let mut chosen = n - 1;
            for (i, &w) in dist_sq.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        };
        for j in 0..d {
            centers.set(c, j, a.get(pick, j));
        }
        for i in 0..n {
            let nd = point_center_dist_sq(a, i, &centers, c);
            if nd < dist_sq[i] {
                dist_sq[i] = nd;
            }
        }
    }
    Ok(centers)
}

fn point_center_dist_sq<S: Scalar>(
    a: &DenseMatrix<S>,
    i: usize,
    centers: &DenseMatrix<S>,
    c: usize,
) -> f64 {
    let mut dist = S::zero();
    for j in 0..a.cols() {
        let diff = a.get(i, j) - centers.get(c, j);
        dist = dist + diff * diff;
    }
    dist.to_f64_lossy()
}

/// Exact optimum by enumerating all partitions of n points into exactly k
/// nonempty blocks (restricted-growth order; ties broken by first hit).
/// Feasible only for n <= 14.
pub fn brute_force_optimum<S: Scalar>(a: &DenseMatrix<S>, k: usize) -> Result<KmeansSolution<S>> {
    let n = a.rows();
    if n > MAX_ENUMERATION_POINTS {
        return Err(Error::OracleInfeasible {
            n,
            max: MAX_ENUMERATION_POINTS,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {} out of range [1, {}]",
            k, n
        )));
    }
    let d = a.cols();
    let total_sq = frobenius_norm_sq(a).to_f64_lossy();

    struct Search<'m, S> {
        a: &'m DenseMatrix<S>,
        n: usize,
        k: usize,
        d: usize,
        total_sq: f64,
        assign: Vec<usize>,
        sums: Vec<Vec<f64>>,
        counts: Vec<usize>,
        best_cost: f64,
        best_assign: Vec<usize>,
    }

    impl<S: Scalar> Search<'_, S> {
        fn recurse(&mut self, i: usize, used: usize) {
            if i == self.n {
                if used < self.k {
                    return;
                }
                // cost = sum ||x_i||^2 - sum_j ||sum_j||^2 / s_j
                let mut explained = 0.0;
                for j in 0..used {
                    let norm_sq: f64 = self.sums[j].iter().map(|v| v * v).sum();
                    explained += norm_sq / self.counts[j] as f64;
                }
                let c = self.total_sq - explained;
                if c < self.best_cost {
                    self.best_cost = c;
                    self.best_assign = self.assign.clone();
                }
                return;
            }
            // Every remaining point may be needed to open a new block.
            let remaining = self.n - i;
            let max_block = (used + 1).min(self.k);
            for b in 0..max_block {
                let opens_new = b == used;
                if self.k - (used + if opens_new { 1 } else { 0 }) > remaining - 1 {
                    continue;
                }
                self.assign[i] = b;
                self.counts[b] += 1;
                for j in 0..self.d {
                    self.sums[b][j] += self.a.get(i, j).to_f64_lossy();
                }
                self.recurse(i + 1, used + if opens_new { 1 } else { 0 });
                self.counts[b] -= 1;
                for j in 0..self.d {
                    self.sums[b][j] -= self.a.get(i, j).to_f64_lossy();
                }
            }
        }
    }

    let mut search = Search {
        a,
        n,
        k,
        d,
        total_sq,
        assign: vec![0; n],
        sums: vec![vec![0.0; d]; k],
        counts: vec![0; k],
        best_cost: f64::INFINITY,
        best_assign: vec![0; n],
    };
    search.recurse(0, 0);

    let indicator = ClusterIndicator::from_assignment(search.best_assign, k)?;
    let centroids = indicator.centroids(a)?;
    let c = cost(a, &indicator)?;
    Ok(KmeansSolution {
        indicator,
        centroids,
        cost: c,
        iterations: 0,
    })
}
