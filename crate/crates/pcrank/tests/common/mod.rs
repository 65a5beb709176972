#![allow(dead_code)]

//! Shared test oracles, independent of the library's solver path.
//!
//! The eigen oracle finds the principal eigenvalue as the largest real root
//! of the characteristic polynomial (Faddeev-LeVerrier coefficients, downward
//! scan plus bisection) and the eigenvector by LU-based inverse iteration at
//! a shifted eigenvalue. Nothing here iterates `C w / ||C w||`.

use pcrank::PcMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct EigenPair {
    pub lambda: f64,
    /// Positive, normalized to sum 1.
    pub vector: Vec<f64>,
}

pub fn principal_eigenpair(c: &PcMatrix) -> EigenPair {
    let n = c.order();
    let dense = c.to_dense();
    let coeffs = char_poly(&dense, n);
    let lambda = largest_real_root(&coeffs, &dense, n);
    let vector = inverse_iteration(&dense, n, lambda);
    EigenPair { lambda, vector }
}

/// Monic characteristic polynomial coefficients by the Faddeev-LeVerrier
/// recurrence: returns `c` with `p(x) = x^n + c[n-1] x^(n-1) + ... + c[0]`.
fn char_poly(a: &[f64], n: usize) -> Vec<f64> {
    let trace = |m: &[f64]| (0..n).map(|i| m[i * n + i]).sum::<f64>();
    let mut coeffs = vec![0.0; n];
    let mut m = a.to_vec();
    coeffs[n - 1] = -trace(&m);
    for k in 2..=n {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[i * n + i] += coeffs[n - k + 1];
        }
        m = matmul(a, &shifted, n);
        coeffs[n - k] = -trace(&m) / k as f64;
    }
    coeffs
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut p = 1.0;
    for &c in coeffs.iter().rev() {
        p = p * x + c;
    }
    p
}

/// Largest real root of the monic polynomial. The principal eigenvalue of a
/// positive matrix is real, simple, at least the minimal row sum, and at most
/// the maximal row sum, and the polynomial is positive beyond it; a downward
/// scan from above the row-sum bound finds the sign change and bisection
/// tightens it.
fn largest_real_root(coeffs: &[f64], a: &[f64], n: usize) -> f64 {
    let max_row_sum = (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = max_row_sum + 1.0;
    let lo_limit = n as f64 - 1.0;
    let steps = 65_536;
    let step = (hi - lo_limit) / steps as f64;

    let mut upper = hi;
    let mut lower = None;
    for s in 1..=steps {
        let x = hi - step * s as f64;
        if horner(coeffs, x) <= 0.0 {
            lower = Some(x);
            break;
        }
        upper = x;
    }
    let mut lo = lower.expect("principal eigenvalue of a reciprocal matrix is at least n");

    for _ in 0..200 {
        let mid = 0.5 * (lo + upper);
        if mid == lo || mid == upper {
            break;
        }
        if horner(coeffs, mid) <= 0.0 {
            lo = mid;
        } else {
            upper = mid;
        }
    }
    0.5 * (lo + upper)
}

/// Inverse iteration at a slightly shifted eigenvalue; returns the positive
/// sum-1 eigenvector.
fn inverse_iteration(a: &[f64], n: usize, lambda: f64) -> Vec<f64> {
    let mu = lambda * (1.0 + 1e-10);
    let mut shifted = a.to_vec();
    for i in 0..n {
        shifted[i * n + i] -= mu;
    }
    let lu = LuFactors::new(shifted, n);

    let mut v = vec![1.0; n];
    for _ in 0..4 {
        let mut w = lu.solve(&v);
        let norm = w.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for x in &mut w {
            *x /= norm;
        }
        v = w;
    }
    let sum: f64 = v.iter().map(|x| x.abs()).sum();
    v.iter().map(|x| x.abs() / sum).collect()
}

/// Dense LU with partial pivoting.
struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
}

impl LuFactors {
    fn new(mut m: Vec<f64>, n: usize) -> Self {
        let mut pivots = vec![0usize; n];
        for col in 0..n {
            let mut pivot = col;
            for row in (col + 1)..n {
                if m[row * n + col].abs() > m[pivot * n + col].abs() {
                    pivot = row;
                }
            }
            pivots[col] = pivot;
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                }
            }
            let diag = m[col * n + col];
            for row in (col + 1)..n {
                let factor = m[row * n + col] / diag;
                m[row * n + col] = factor;
                for j in (col + 1)..n {
                    m[row * n + j] -= factor * m[col * n + j];
                }
            }
        }
        LuFactors { n, lu: m, pivots }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = b.to_vec();
        for col in 0..n {
            x.swap(col, self.pivots[col]);
        }
        for row in 1..n {
            for col in 0..row {
                x[row] -= self.lu[row * n + col] * x[col];
            }
        }
        for row in (0..n).rev() {
            for col in (row + 1)..n {
                x[row] -= self.lu[row * n + col] * x[col];
            }
            x[row] /= self.lu[row * n + row];
        }
        x
    }
}

/// Upper-triangle entries drawn uniformly from the 1/9..9 comparison scale.
pub fn random_scale_matrix(n: usize, rng: &mut ChaCha8Rng) -> PcMatrix {
    const SCALE: [f64; 17] = [
        1.0 / 9.0,
        1.0 / 8.0,
        1.0 / 7.0,
        1.0 / 6.0,
        1.0 / 5.0,
        1.0 / 4.0,
        1.0 / 3.0,
        1.0 / 2.0,
        1.0,
        2.0,
        3.0,
        4.0,
        5.0,
        6.0,
        7.0,
        8.0,
        9.0,
    ];
    let upper: Vec<f64> = (0..n * (n - 1) / 2)
        .map(|_| SCALE[rng.random_range(0..SCALE.len())])
        .collect();
    PcMatrix::from_upper_triangle(n, upper).expect("scale entries are positive")
}

/// Upper-triangle entries log-uniform on [1/span, span].
pub fn random_loguniform_matrix(n: usize, span: f64, rng: &mut ChaCha8Rng) -> PcMatrix {
    let ln_span = span.ln();
    let upper: Vec<f64> = (0..n * (n - 1) / 2)
        .map(|_| rng.random_range(-ln_span..=ln_span).exp())
        .collect();
    PcMatrix::from_upper_triangle(n, upper).expect("entries are positive")
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
