//! Finite metric spaces: labeled points with a symmetric distance matrix,
//! validation, and a brute-force distance between small spaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap for the exhaustive map search in [`gh_distance_bruteforce`].
pub const GH_BRUTEFORCE_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("distance matrix is not square: row {row} has {len} entries for {n} points")]
    NonSquare { row: usize, len: usize, n: usize },
    #[error("labels/matrix size mismatch: {labels} labels, {rows} rows")]
    LabelMismatch { labels: usize, rows: usize },
    #[error("non-finite distance at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("space too large for brute-force search: {0} points (limit {GH_BRUTEFORCE_LIMIT})")]
    TooLarge(usize),
}

/// Labeled points with an `n x n` matrix of pairwise distances.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FiniteMetricSpace {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Checks shape and finiteness only; metric axioms are the business of
    /// [`validate_metric`].
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = dist.len();
        if labels.len() != n {
            return Err(MetricError::LabelMismatch { labels: labels.len(), rows: n });
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::NonSquare { row: i, len: row.len(), n });
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() {
                    return Err(MetricError::NonFinite(i, j));
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Builds a space from a matrix with autogenerated labels `p0, p1, ...`.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let labels = (0..dist.len()).map(|i| format!("p{i}")).collect();
        FiniteMetricSpace::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }
}

/// One broken metric axiom, with the offending indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MetricViolation {
    /// `dist[i][i]` differs from zero.
    Diagonal { i: usize, value: f64 },
    /// `dist[i][j]` differs from `dist[j][i]`.
    Symmetry { i: usize, j: usize, forward: f64, backward: f64 },
    /// `dist[i][k] > dist[i][j] + dist[j][k]`.
    Triangle { i: usize, j: usize, k: usize, excess: f64 },
    /// Negative entry.
    Negative { i: usize, j: usize, value: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricValidation {
    pub violations: Vec<MetricViolation>,
}

impl MetricValidation {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reports every zero-diagonal, symmetry and triangle-inequality violation
/// exceeding `tol`. Shape and non-finite entries are hard errors.
pub fn validate_metric(m: &FiniteMetricSpace, tol: f64) -> Result<MetricValidation, MetricError> {
    let n = m.len();
    for (i, row) in m.dist.iter().enumerate() {
        if row.len() != n {
            return Err(MetricError::NonSquare { row: i, len: row.len(), n });
        }
        for (j, &d) in row.iter().enumerate() {
            if !d.is_finite() {
                return Err(MetricError::NonFinite(i, j));
            }
        }
    }
    let mut violations = Vec::new();
    for i in 0..n {
        if m.dist[i][i].abs() > tol {
            violations.push(MetricViolation::Diagonal { i, value: m.dist[i][i] });
        }
        for j in 0..n {
            if m.dist[i][j] < -tol {
                violations.push(MetricViolation::Negative { i, j, value: m.dist[i][j] });
            }
        }
        for j in (i + 1)..n {
            if (m.dist[i][j] - m.dist[j][i]).abs() > tol {
                violations.push(MetricViolation::Symmetry {
                    i,
                    j,
                    forward: m.dist[i][j],
                    backward: m.dist[j][i],
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let excess = m.dist[i][k] - m.dist[i][j] - m.dist[j][k];
                if excess > tol {
                    violations.push(MetricViolation::Triangle { i, j, k, excess });
                }
            }
        }
    }
    Ok(MetricValidation { violations })
}

/// Least one-sided distortion over all maps `from -> to`: the smallest `eps`
/// with `|x x'| <= |f(x) f(x')| + eps` for some map `f` and all pairs.
fn one_sided_distortion(from: &FiniteMetricSpace, to: &FiniteMetricSpace) -> f64 {
    let n = from.len();
    let m = to.len();
    if n == 0 {
        return 0.0;
    }
    if m == 0 {
        return f64::INFINITY;
    }
    let total = (m as u64).pow(n as u32);
    let mut best = f64::INFINITY;
    let mut map = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for slot in map.iter_mut() {
            *slot = (c % m as u64) as usize;
            c /= m as u64;
        }
        let mut eps = 0.0f64;
        'pairs: for i in 0..n {
            for j in (i + 1)..n {
                let need = from.d(i, j) - to.d(map[i], map[j]);
                if need > eps {
                    eps = need;
                    if eps >= best {
                        break 'pairs;
                    }
                }
            }
        }
        if eps < best {
            best = eps;
        }
    }
    best.max(0.0)
}

/// Exhaustive distance between small finite metric spaces: the least `eps`
/// such that maps with one-sided distortion `eps` exist in both directions.
/// Exact up to enumeration; both spaces must have at most
/// [`GH_BRUTEFORCE_LIMIT`] points.
pub fn gh_distance_bruteforce(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, MetricError> {
    if x.len() > GH_BRUTEFORCE_LIMIT {
        return Err(MetricError::TooLarge(x.len()));
    }
    if y.len() > GH_BRUTEFORCE_LIMIT {
        return Err(MetricError::TooLarge(y.len()));
    }
    Ok(one_sided_distortion(x, y).max(one_sided_distortion(y, x)))
}
