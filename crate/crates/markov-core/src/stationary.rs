use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::{l1_norm, Distribution, TransitionMatrix};

/// Residual gate on the dense stationary solve.
pub const STATIONARY_RESIDUAL_TOL: f64 = 1e-10;

/// Stationary distribution of an irreducible chain by dense LU.
///
/// Solves `(I - P^T) x = 0` with the last equation replaced by the
/// normalization `sum x = 1`. The LU route is deterministic, which keeps
/// every downstream oracle reproducible. Fails with [`Error::NotIrreducible`]
/// when the solve degenerates, produces a non-positive entry, or leaves a
/// residual above [`STATIONARY_RESIDUAL_TOL`].
pub fn stationary_dense(p: &TransitionMatrix) -> Result<Distribution> {
    let n = p.n();
    let mut a = DMatrix::<f64>::identity(n, n) - p.to_dense().transpose();
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let x = a.lu().solve(&b).ok_or(Error::NotIrreducible)?;
    if x.iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::NotIrreducible);
    }
    let pi = Distribution::new(x.iter().copied().collect())
        .map_err(|_| Error::NotIrreducible)?;
    if l1_norm(&p.residual(pi.values())) > STATIONARY_RESIDUAL_TOL {
        return Err(Error::NotIrreducible);
    }
    Ok(pi)
}

/// Time reversal `P* = Pi^{-1} P^T Pi`.
///
/// Rows are renormalized by their exact sums, which is a no-op at machine
/// precision when `pi` is the stationary distribution of `p`.
pub fn time_reversal(p: &TransitionMatrix, pi: &Distribution) -> Result<TransitionMatrix> {
    let n = p.n();
    if pi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: pi.len() });
    }
    if pi.values().iter().any(|&v| v <= 0.0) {
        return Err(Error::DegenerateStationary);
    }
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        let (cols, vals) = p.row(i);
        for (&j, &pij) in cols.iter().zip(vals) {
            // P*[j, i] = pi_i P[i, j] / pi_j; pushed in ascending i, so each
            // row stays sorted.
            rows[j].push((i, pi[i] * pij / pi[j]));
        }
    }
    for row in &mut rows {
        let sum: f64 = row.iter().map(|&(_, v)| v).sum();
        if sum > 0.0 {
            for (_, v) in row.iter_mut() {
                *v /= sum;
            }
        }
    }
    TransitionMatrix::from_rows(rows)
}

/// Detailed-balance check: `max_{i,j} |pi_i P_ij - pi_j P_ji| <= tol`.
pub fn is_reversible(p: &TransitionMatrix, pi: &Distribution, tol: f64) -> bool {
    let n = p.n();
    for i in 0..n {
        let (cols, vals) = p.row(i);
        for (&j, &pij) in cols.iter().zip(vals) {
            let forward = pi[i] * pij;
            let backward = pi[j] * p.get(j, i);
            if (forward - backward).abs() > tol {
                return false;
            }
        }
    }
    true
}
