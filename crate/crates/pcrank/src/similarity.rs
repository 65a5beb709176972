//! Distances and compatibility measures between comparison matrices and
//! between ranking vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PcMatrix, PriorityVector};

/// The four compatibility indices of a matrix or vector pair.
///
/// For any pair, `comp_lower <= comp <= comp_upper <= comp_max`; all four are
/// 1 when the inputs agree entrywise.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CompatibilityReport {
    /// Mean of `c_ij^(1) * c_ji^(2)` over all ordered pairs.
    pub comp: f64,
    /// Mean of the smaller product per unordered pair.
    pub comp_lower: f64,
    /// Mean of the larger product per unordered pair.
    pub comp_upper: f64,
    /// Worst single ordered pair.
    pub comp_max: f64,
}

/// Cross-ratio grid `beta_ij = (w1_i / w1_j) * (w2_j / w2_i)` for a vector
/// pair; satisfies `beta_ij * beta_ji = 1` and `beta_ii = 1`.
#[derive(Debug, Clone)]
pub struct BetaGrid {
    n: usize,
    values: Vec<f64>,
}

impl BetaGrid {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of range");
        self.values[i * self.n + j]
    }
}

fn check_orders(n1: usize, n2: usize) -> Result<()> {
    if n1 != n2 {
        return Err(Error::Shape(format!("orders differ: {n1} vs {n2}")));
    }
    Ok(())
}

/// Mean Hadamard agreement `(1/n^2) sum_ij c_ij^(1) * c_ji^(2)`.
pub fn comp_matrices(c1: &PcMatrix, c2: &PcMatrix) -> Result<f64> {
    check_orders(c1.order(), c2.order())?;
    let n = c1.order();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += c1.get(i, j) * c2.get(j, i);
        }
    }
    Ok(total / (n * n) as f64)
}

/// `(2 / (n(n-1))) sum_{j>i} max(c_ij^(1) c_ji^(2), c_ji^(1) c_ij^(2))`; at least 1.
pub fn comp_upper_matrices(c1: &PcMatrix, c2: &PcMatrix) -> Result<f64> {
    pairwise_mean(c1, c2, f64::max)
}

/// As above with the smaller product per pair; at most 1.
pub fn comp_lower_matrices(c1: &PcMatrix, c2: &PcMatrix) -> Result<f64> {
    pairwise_mean(c1, c2, f64::min)
}

fn pairwise_mean(c1: &PcMatrix, c2: &PcMatrix, pick: fn(f64, f64) -> f64) -> Result<f64> {
    check_orders(c1.order(), c2.order())?;
    let n = c1.order();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            total += pick(c1.get(i, j) * c2.get(j, i), c1.get(j, i) * c2.get(i, j));
        }
    }
    Ok(2.0 * total / (n * (n - 1)) as f64)
}

/// Largest product over all ordered pairs; at least 1 since the diagonal
/// contributes exactly 1.
pub fn comp_max_matrices(c1: &PcMatrix, c2: &PcMatrix) -> Result<f64> {
    check_orders(c1.order(), c2.order())?;
    let n = c1.order();
    let mut best = 1.0_f64;
    for i in 0..n {
        for j in 0..n {
            best = best.max(c1.get(i, j) * c2.get(j, i));
        }
    }
    Ok(best)
}

/// All four compatibility indices of a matrix pair.
pub fn comp_report_matrices(c1: &PcMatrix, c2: &PcMatrix) -> Result<CompatibilityReport> {
    Ok(CompatibilityReport {
        comp: comp_matrices(c1, c2)?,
        comp_lower: comp_lower_matrices(c1, c2)?,
        comp_upper: comp_upper_matrices(c1, c2)?,
        comp_max: comp_max_matrices(c1, c2)?,
    })
}

/// Cross-ratio grid comparing the relative priorities of two vectors.
pub fn beta_grid(w1: &PriorityVector, w2: &PriorityVector) -> Result<BetaGrid> {
    check_orders(w1.len(), w2.len())?;
    let n = w1.len();
    let mut values = vec![1.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                values[i * n + j] = (w1.get(i) / w1.get(j)) * (w2.get(j) / w2.get(i));
            }
        }
    }
    Ok(BetaGrid { n, values })
}

/// Compatibility indices of two ranking vectors.
///
/// Defined as the indices of the consistent matrices induced by the vectors;
/// computed here from the cross-ratio grid, which is the same sum without
/// materializing the matrices. Debug builds assert the two routes agree.
pub fn comp_vectors(w1: &PriorityVector, w2: &PriorityVector) -> Result<CompatibilityReport> {
    let grid = beta_grid(w1, w2)?;
    let n = grid.order();
    let mut total = 0.0;
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut max = 1.0_f64;
    for i in 0..n {
        for j in 0..n {
            let b = grid.get(i, j);
            total += b;
            max = max.max(b);
            if j > i {
                let rev = grid.get(j, i);
                lower += b.min(rev);
                upper += b.max(rev);
            }
        }
    }
    let pair_scale = 2.0 / (n * (n - 1)) as f64;
    let report = CompatibilityReport {
        comp: total / (n * n) as f64,
        comp_lower: pair_scale * lower,
        comp_upper: pair_scale * upper,
        comp_max: max,
    };

    #[cfg(debug_assertions)]
    {
        let via_matrices =
            comp_report_matrices(&PcMatrix::induced(w1), &PcMatrix::induced(w2))?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        debug_assert!(close(report.comp, via_matrices.comp));
        debug_assert!(close(report.comp_lower, via_matrices.comp_lower));
        debug_assert!(close(report.comp_upper, via_matrices.comp_upper));
        debug_assert!(close(report.comp_max, via_matrices.comp_max));
    }

    Ok(report)
}

/// Sum of absolute componentwise differences; in `[0, 2]` for sum-1 vectors.
pub fn manhattan(w1: &PriorityVector, w2: &PriorityVector) -> Result<f64> {
    check_orders(w1.len(), w2.len())?;
    Ok(l1_distance(w1.weights(), w2.weights()))
}

/// Largest absolute componentwise difference.
pub fn chebyshev(w1: &PriorityVector, w2: &PriorityVector) -> Result<f64> {
    check_orders(w1.len(), w2.len())?;
    Ok(linf_distance(w1.weights(), w2.weights()))
}

fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Number of discordant alternative pairs between the two descending-weight
/// orderings, i.e. the transpositions needed to turn one ranking into the
/// other. Exact weight ties are broken by alternative index.
pub fn kendall_distance(w1: &PriorityVector, w2: &PriorityVector) -> Result<usize> {
    check_orders(w1.len(), w2.len())?;
    let r1 = descending_ranks(w1.weights());
    let r2 = descending_ranks(w2.weights());
    let n = r1.len();
    let mut discordant = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            let d1 = r1[a] as i64 - r1[b] as i64;
            let d2 = r2[a] as i64 - r2[b] as i64;
            if d1 * d2 < 0 {
                discordant += 1;
            }
        }
    }
    Ok(discordant)
}

/// Rank of each alternative when sorted by weight descending, ties by index.
fn descending_ranks(weights: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        weights[b]
            .partial_cmp(&weights[a])
            .expect("weights are finite")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0; weights.len()];
    for (rank, &alt) in order.iter().enumerate() {
        ranks[alt] = rank;
    }
    ranks
}
