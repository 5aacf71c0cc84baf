use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Distribution, TransitionMatrix};
use crate::stationary::stationary_dense;

/// Deviation matrix `D = (I - R + 1'pi)^{-1} - 1'pi`, where `1'pi` is the
/// rank-one matrix whose rows all equal `pi`.
///
/// Satisfies `D 1' = 0` and `pi D = 0`.
pub fn deviation_matrix(r: &TransitionMatrix, pi: &Distribution) -> Result<DenseMatrix> {
    let n = r.n();
    if pi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: pi.len() });
    }
    let mut one_pi = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            one_pi[(i, j)] = pi[j];
        }
    }
    let fundamental = DMatrix::<f64>::identity(n, n) - r.to_dense() + &one_pi;
    let z = fundamental
        .try_inverse()
        .ok_or(Error::SingularFundamentalMatrix)?;
    Ok(z - one_pi)
}

/// Schweitzer perturbation bound on the stationary distribution of the
/// mixture `(1 - eps) R + eps Q`:
/// `|pi(eps) - pi|_inf <= t / (1 - t)` with `t = eps |(Q - R) D|_inf`.
pub fn schweitzer_bound(
    q: &TransitionMatrix,
    r: &TransitionMatrix,
    d: &DenseMatrix,
    eps: f64,
) -> Result<f64> {
    if q.n() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), actual: q.n() });
    }
    let m = (q.to_dense() - r.to_dense()) * d;
    let t = eps * inf_norm(&m);
    if t >= 1.0 {
        return Err(Error::BoundInapplicable { value: t });
    }
    Ok(t / (1.0 - t))
}

/// Bound on the local irreversibility of the mixture `(1 - eps) R + eps Q`
/// with `R` reversible:
/// `max_i kappa_i <= c1(eps) |pi(eps) - pi|_inf + eps c2(eps)`, where
/// `c1 = (1 - eps) |R|_2 / pi_min(eps)` and `c2 = |Q|_2 pi_max(eps) / pi_min(eps)`.
pub fn kappa_mixture_bound(q: &TransitionMatrix, r: &TransitionMatrix, eps: f64) -> Result<f64> {
    if q.n() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), actual: q.n() });
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidMixtureWeight(eps));
    }
    let pi_r = stationary_dense(r)?;
    let p_eps = r.mixture(q, eps)?;
    let pi_eps = stationary_dense(&p_eps)?;

    let deviation = pi_eps
        .values()
        .iter()
        .zip(pi_r.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let c1 = (1.0 - eps) * spectral_norm(r) / pi_eps.min();
    let c2 = spectral_norm(q) * pi_eps.max() / pi_eps.min();
    Ok(c1 * deviation + eps * c2)
}

/// Operator 2-norm by dense SVD.
pub fn spectral_norm(p: &TransitionMatrix) -> f64 {
    p.to_dense()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Max absolute row sum.
pub fn inf_norm(m: &DenseMatrix) -> f64 {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}
