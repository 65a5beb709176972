//! Priority derivation: the eigenvalue method and the geometric mean method.

use crate::error::{Error, Result};
use crate::matrix::{PcMatrix, PriorityVector};

/// Eigensolver knobs: residual threshold and iteration cap.
#[derive(Debug, Clone, Copy)]
pub struct EvmOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EvmOptions {
    fn default() -> Self {
        EvmOptions {
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

impl EvmOptions {
    pub fn new(tol: f64, max_iter: usize) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tol must be positive, got {tol}")));
        }
        if max_iter == 0 {
            return Err(Error::Domain("max_iter must be >= 1".to_string()));
        }
        Ok(EvmOptions { tol, max_iter })
    }
}

/// Converged eigenvalue-method result.
#[derive(Debug, Clone)]
pub struct EvmResult {
    /// Principal right eigenvector, normalized to sum 1.
    pub weights: PriorityVector,
    /// Principal eigenvalue; `>= n` for reciprocal matrices, `= n` iff consistent.
    pub lambda_max: f64,
    pub iterations: usize,
    /// Infinity norm of `C w - lambda w` at return.
    pub residual: f64,
}

/// Power iteration for the principal eigenpair of a positive matrix.
///
/// Starts from the uniform vector and renormalizes to unit L1 norm each step,
/// so `lambda` is estimated as `||C w||_1 / ||w||_1 = sum(C w)`. Convergence is
/// declared on the eigen-residual `||C w - lambda w||_inf <= tol`, which
/// certifies the returned pair directly rather than stalling of the iterates.
/// Perron-Frobenius guarantees a simple dominant positive eigenvalue, so the
/// iteration converges for every valid matrix; the start vector is fixed and
/// the result is deterministic.
pub fn evm(c: &PcMatrix, opts: EvmOptions) -> Result<EvmResult> {
    let n = c.order();
    let dense = c.to_dense();
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iter in 1..=opts.max_iter {
        for i in 0..n {
            let row = &dense[i * n..(i + 1) * n];
            y[i] = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        }
        let lambda: f64 = y.iter().sum();
        residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - lambda * xi).abs())
            .fold(0.0, f64::max);
        if residual <= opts.tol {
            let weights = PriorityVector::normalized(x)?;
            return Ok(EvmResult {
                weights,
                lambda_max: lambda,
                iterations: iter,
                residual,
            });
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / lambda;
        }
    }

    Err(Error::Convergence {
        iterations: opts.max_iter,
        residual,
    })
}

/// Geometric mean method: component `i` is proportional to the geometric mean
/// of row `i`, normalized to sum 1.
///
/// Row products are accumulated in log space; direct products overflow for
/// large orders or extreme entries.
pub fn gmm(c: &PcMatrix) -> PriorityVector {
    let n = c.order();
    let dense = c.to_dense();
    let mut logs = vec![0.0; n];
    for i in 0..n {
        logs[i] = dense[i * n..(i + 1) * n]
            .iter()
            .map(|e| e.ln())
            .sum::<f64>()
            / n as f64;
    }
    let max_log = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - max_log).exp()).collect();
    PriorityVector::normalized(raw).expect("positive entries yield positive geometric means")
}
