use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense real matrix used by the desk-scale diagnostics.
pub type DenseMatrix = DMatrix<f64>;

/// Tolerance on row sums of a stochastic matrix.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// Row-stochastic transition matrix in compressed sparse row form.
///
/// Every constructor validates the invariants: entries are nonnegative and
/// finite, column indices lie in `[0, n)`, each row is sorted with no
/// duplicate columns, and every row sums to 1 within [`ROW_SUM_TOL`].
/// Exact zeros are dropped so that `out_degree` counts true edges.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl TransitionMatrix {
    /// Builds from per-row `(column, probability)` pairs.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable_by_key(|&(j, _)| j);
            let mut sum = 0.0;
            let mut last_col = usize::MAX;
            for &(j, p) in &row {
                if !p.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                if p < 0.0 {
                    return Err(Error::NegativeProbability { row: i, col: j, value: p });
                }
                if j >= n {
                    return Err(Error::ColumnOutOfBounds { row: i, col: j, n });
                }
                if j == last_col {
                    return Err(Error::DuplicateColumn { row: i, col: j });
                }
                last_col = j;
                sum += p;
                if p > 0.0 {
                    col_idx.push(j);
                    values.push(p);
                }
            }
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::RowSumMismatch { row: i, sum, tol: ROW_SUM_TOL });
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self { n, row_ptr, col_idx, values })
    }

    /// Builds from a dense matrix, keeping strictly positive entries.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        let n = m.nrows();
        let rows = (0..n)
            .map(|i| (0..m.ncols()).map(|j| (j, m[(i, j)])).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// The chain of the uniform complete graph with self-loops: every entry 1/n.
    pub fn uniform_complete(n: usize) -> Self {
        let rows = (0..n)
            .map(|_| (0..n).map(|j| (j, 1.0 / n as f64)).collect())
            .collect();
        Self::from_rows(rows).expect("uniform chain is stochastic")
    }

    /// The deterministic directed cycle i -> i+1 (mod n).
    pub fn directed_cycle(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![((i + 1) % n, 1.0)]).collect();
        Self::from_rows(rows).expect("cycle chain is stochastic")
    }

    /// Convex combination `(1 - eps) * self + eps * other`.
    ///
    /// `eps = 0` returns `self` exactly and `eps = 1` returns `other` exactly,
    /// since zero-weight entries are dropped.
    pub fn mixture(&self, other: &Self, eps: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: other.n });
        }
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::InvalidMixtureWeight(eps));
        }
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let (ca, va) = self.row(i);
            let (cb, vb) = other.row(i);
            let mut row = Vec::with_capacity(ca.len() + cb.len());
            let (mut a, mut b) = (0, 0);
            while a < ca.len() || b < cb.len() {
                match (ca.get(a), cb.get(b)) {
                    (Some(&ja), Some(&jb)) if ja == jb => {
                        row.push((ja, (1.0 - eps) * va[a] + eps * vb[b]));
                        a += 1;
                        b += 1;
                    }
                    (Some(&ja), Some(&jb)) if ja < jb => {
                        row.push((ja, (1.0 - eps) * va[a]));
                        a += 1;
                    }
                    (Some(_), Some(&jb)) => {
                        row.push((jb, eps * vb[b]));
                        b += 1;
                    }
                    (Some(&ja), None) => {
                        row.push((ja, (1.0 - eps) * va[a]));
                        a += 1;
                    }
                    (None, Some(&jb)) => {
                        row.push((jb, eps * vb[b]));
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            rows.push(row);
        }
        // Row sums are convex combinations of two unit sums, so they pass the
        // constructor tolerance.
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of stored edges (nonzero entries).
    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    /// Out-degree of state `i` (nonzeros in row `i`).
    pub fn out_degree(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// Row `i` as parallel slices of column indices and probabilities.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    /// Entry `P[i, j]`, zero if absent.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &p) in cols.iter().zip(vals) {
                m[(i, j)] = p;
            }
        }
        m
    }

    /// Row-vector product `x P`.
    pub fn apply_right(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match state count");
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            let (cols, vals) = self.row(i);
            for (&j, &p) in cols.iter().zip(vals) {
                out[j] += xi * p;
            }
        }
        out
    }

    /// The residual `x (P - I)`.
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r = self.apply_right(x);
        for (ri, xi) in r.iter_mut().zip(x) {
            *ri -= xi;
        }
        r
    }
}

/// Probability row vector; normalized to unit sum on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    values: Vec<f64>,
}

impl Distribution {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { row: 0, col: index });
            }
            if v < 0.0 {
                return Err(Error::NegativeWeight { index, value: v });
            }
        }
        let sum: f64 = values.iter().sum();
        if sum <= 0.0 {
            return Err(Error::ZeroMass);
        }
        for v in &mut values {
            *v /= sum;
        }
        Ok(Self { values })
    }

    pub fn uniform(n: usize) -> Self {
        Self { values: vec![1.0 / n as f64; n] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl std::ops::Index<usize> for Distribution {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// l1 norm of a real vector.
pub fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Euclidean norm of a real vector.
pub fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
