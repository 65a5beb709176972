//! Pairwise comparison matrices and priority vectors.
//!
//! A [`PcMatrix`] holds the ratios `c_ij` of an `n x n` positive reciprocal
//! matrix. Only the upper triangle is stored; the diagonal is implicitly 1 and
//! the lower triangle is derived as `1 / c_ij`, so `c_ij * c_ji == 1` holds
//! exactly for every constructed matrix. Downstream inequality checks assume
//! exact reciprocity, which floating-point storage of both triangles would not
//! deliver.

use crate::error::{Error, Result};

/// Relative tolerance for ratio comparisons, constrained to `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(rel: f64) -> Result<Self> {
        if !(rel > 0.0 && rel < 1.0) {
            return Err(Error::Domain(format!(
                "tolerance must lie in (0, 1), got {rel}"
            )));
        }
        Ok(Tolerance(rel))
    }

    pub fn rel(&self) -> f64 {
        self.0
    }
}

/// Positive weights over `n` alternatives, normalized to sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorityVector {
    weights: Vec<f64>,
}

impl PriorityVector {
    /// Wraps weights that already sum to 1 (within 1e-12 absolute).
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        Self::check_positive(&weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "weights must sum to 1 within 1e-12, got sum {sum}"
            )));
        }
        Ok(PriorityVector { weights })
    }

    /// Scales arbitrary positive weights to sum 1.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self> {
        Self::check_positive(&weights)?;
        let sum: f64 = weights.iter().sum();
        if !sum.is_finite() {
            return Err(Error::Domain("weight sum overflows".to_string()));
        }
        for w in &mut weights {
            *w /= sum;
        }
        Ok(PriorityVector { weights })
    }

    fn check_positive(weights: &[f64]) -> Result<()> {
        if weights.len() < 2 {
            return Err(Error::Shape(format!(
                "need at least 2 weights, got {}",
                weights.len()
            )));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Domain(format!(
                    "weight {w} at index {i} is not strictly positive and finite"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Square positive reciprocal matrix of pairwise comparison ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    /// Row-major upper triangle: `c_01, c_02, ..., c_0(n-1), c_12, ...`.
    upper: Vec<f64>,
}

impl PcMatrix {
    /// Builds a matrix of order `n` from its row-major upper triangle
    /// (`n * (n - 1) / 2` strictly positive finite entries).
    pub fn from_upper_triangle(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("matrix order must be >= 2, got {n}")));
        }
        let expected = n * (n - 1) / 2;
        if entries.len() != expected {
            return Err(Error::Shape(format!(
                "order {n} needs {expected} upper-triangle entries, got {}",
                entries.len()
            )));
        }
        for (idx, &e) in entries.iter().enumerate() {
            if !(e.is_finite() && e > 0.0) {
                return Err(Error::Domain(format!(
                    "entry {e} at upper-triangle position {idx} is not strictly positive and finite"
                )));
            }
        }
        Ok(PcMatrix { n, upper: entries })
    }

    /// The consistent matrix induced by a weight vector: `c_ij = w_i / w_j`.
    pub fn induced(w: &PriorityVector) -> Self {
        let n = w.len();
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                upper.push(w.get(i) / w.get(j));
            }
        }
        PcMatrix { n, upper }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn upper_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// The ratio `c_ij`. Indices are 0-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of range");
        if i == j {
            1.0
        } else if i < j {
            self.upper[self.upper_index(i, j)]
        } else {
            1.0 / self.upper[self.upper_index(j, i)]
        }
    }

    /// Row-major dense copy, for solvers that sweep whole rows.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![1.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let e = self.upper[self.upper_index(i, j)];
                out[i * n + j] = e;
                out[j * n + i] = 1.0 / e;
            }
        }
        out
    }

    /// True iff `|c_ij * c_jk * c_ki - 1| <= tol` for every ordered triad.
    ///
    /// Triads with repeated indices multiply to exactly 1 under structural
    /// reciprocity, so only distinct triples are scanned; both orientations of
    /// each triple are checked because `|t - 1|` and `|1/t - 1|` differ.
    pub fn is_consistent(&self, tol: Tolerance) -> bool {
        let n = self.n;
        let dense = self.to_dense();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let t = dense[i * n + j] * dense[j * n + k] * dense[k * n + i];
                    if (t - 1.0).abs() > tol.rel() || (1.0 / t - 1.0).abs() > tol.rel() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Parses the matrix text format.
    ///
    /// UTF-8 text, `#` comment lines, one row per line, whitespace-separated
    /// entries; an entry is a decimal literal or an integer fraction `p/q`.
    /// Two layouts are accepted: a full `n x n` matrix (diagonal must be 1,
    /// reciprocity checked at relative tolerance 1e-6, then re-symmetrized
    /// from the upper triangle) or a bare upper triangle (rows of length
    /// `n-1, n-2, ..., 1`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (line_idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            let bytes = line.as_bytes();
            let mut pos = 0;
            while pos < bytes.len() {
                if bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                    continue;
                }
                let start = pos;
                while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                // Column of the token's first byte, 1-based.
                row.push(parse_entry(&line[start..pos], line_idx + 1, start + 1)?);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "no matrix rows found".to_string(),
            });
        }

        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let r = rows.len();
        // A lone entry is the order-2 upper triangle, not a 1x1 matrix.
        if r >= 2 && lens.iter().all(|&l| l == r) {
            Self::from_full_rows(&rows)
        } else if lens.iter().enumerate().all(|(i, &l)| l == lens[0] - i) && lens[r - 1] == 1 {
            let n = lens[0] + 1;
            Self::from_upper_triangle(n, rows.into_iter().flatten().collect())
        } else {
            Err(Error::Shape(format!(
                "rows of lengths {lens:?} form neither a square matrix nor an upper triangle"
            )))
        }
    }

    fn from_full_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Domain(format!("matrix order must be >= 2, got {n}")));
        }
        for (i, row) in rows.iter().enumerate() {
            let d = row[i];
            if (d - 1.0).abs() > 1e-12 {
                return Err(Error::Validation {
                    i: i + 1,
                    j: i + 1,
                    message: format!("diagonal entry must be 1, got {d}"),
                });
            }
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let prod = rows[i][j] * rows[j][i];
                if (prod - 1.0).abs() > 1e-6 {
                    return Err(Error::Validation {
                        i: j + 1,
                        j: i + 1,
                        message: format!(
                            "reciprocity violated: c[{}][{}] * c[{}][{}] = {prod}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        ),
                    });
                }
                upper.push(rows[i][j]);
            }
        }
        Self::from_upper_triangle(n, upper)
    }

    /// Serializes as a full matrix, 17-significant-digit decimals, one
    /// newline-terminated row per line. `parse` round-trips this exactly.
    pub fn to_text(&self) -> String {
        let n = self.n;
        let dense = self.to_dense();
        let mut out = String::new();
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:.16e}", dense[i * n + j]));
            }
            out.push('\n');
        }
        out
    }
}

fn parse_entry(token: &str, line: usize, column: usize) -> Result<f64> {
    let value = if let Some((p, q)) = token.split_once('/') {
        let num: i64 = p.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("bad fraction numerator in '{token}'"),
        })?;
        let den: i64 = q.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("bad fraction denominator in '{token}'"),
        })?;
        if den == 0 {
            return Err(Error::Parse {
                line,
                column,
                message: format!("zero denominator in '{token}'"),
            });
        }
        num as f64 / den as f64
    } else {
        token.parse::<f64>().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("'{token}' is not a number"),
        })?
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Parse {
            line,
            column,
            message: format!("entry {value} is not strictly positive and finite"),
        });
    }
    Ok(value)
}
