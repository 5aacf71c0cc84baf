use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::{laplacians, KERNEL_TOL};
use crate::matrix::{DenseMatrix, Distribution, TransitionMatrix};

/// Constants of the residual-energy sandwich
/// `c1 E(x) <= |x Pi^{1/2} (P - I)|_2^2 <= c2 E(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConstants {
    pub c1: f64,
    pub c2: f64,
}

/// Numerical gate on the shared-kernel requirement.
const KERNEL_MATCH_TOL: f64 = 1e-8;

/// Extremes of the generalized Rayleigh quotient `x A x^T / x B x^T` over the
/// orthogonal complement of `ker(B)`, for symmetric PSD `A` and `B` with
/// equal kernels.
///
/// Eigenvalues of `B` below `kernel_tol` count as the kernel; `A` failing to
/// vanish there, or vanishing strictly outside it, is a
/// [`Error::KernelMismatch`].
pub fn rayleigh_extremes(
    a: &DenseMatrix,
    b: &DenseMatrix,
    kernel_tol: f64,
) -> Result<(f64, f64)> {
    let n = b.nrows();
    let eig = b.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let kernel_dim = order
        .iter()
        .take_while(|&&i| eig.eigenvalues[i] < kernel_tol)
        .count();
    // ker(B) must also annihilate A.
    for &i in order.iter().take(kernel_dim) {
        if (a * eig.eigenvectors.column(i)).norm() > KERNEL_MATCH_TOL {
            return Err(Error::KernelMismatch);
        }
    }

    // Whitening basis W = U+ diag(1/sqrt(lambda)); the pencil reduces to the
    // ordinary symmetric eigenproblem of C = W^T A W.
    let rank = n - kernel_dim;
    let mut w = DMatrix::<f64>::zeros(n, rank);
    for (k, &i) in order.iter().skip(kernel_dim).enumerate() {
        let scale = 1.0 / eig.eigenvalues[i].sqrt();
        w.column_mut(k).copy_from(&(eig.eigenvectors.column(i) * scale));
    }
    let c = w.transpose() * a * &w;
    let vals = c.symmetric_eigen().eigenvalues;
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min <= KERNEL_MATCH_TOL {
        // A vanishes somewhere B does not: kernels disagree.
        return Err(Error::KernelMismatch);
    }
    Ok((min, max))
}

/// Extremes of the generalized Rayleigh quotient of
/// `B = Pi^{1/2}(P - I)(P - I)^T Pi^{1/2}` against the Dirichlet energy,
/// restricted to the orthogonal complement of the shared kernel.
///
/// For an irreducible chain both quadratic forms vanish exactly on
/// `span(sqrt(pi))`; a numerical kernel disagreement beyond `1e-8` is
/// reported as [`Error::KernelMismatch`].
pub fn residual_energy_constants(
    p: &TransitionMatrix,
    pi: &Distribution,
) -> Result<EnergyConstants> {
    let n = p.n();
    let (_, l_sym) = laplacians(p, pi)?;

    // B = M M^T with M = Pi^{1/2} (P - I).
    let mut m = p.to_dense() - DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        let s = pi[i].sqrt();
        for j in 0..n {
            m[(i, j)] *= s;
        }
    }
    let b = &m * m.transpose();

    let kernel_dim = {
        let eigs = l_sym.clone().symmetric_eigen().eigenvalues;
        eigs.iter().filter(|&&v| v < KERNEL_TOL).count()
    };
    if kernel_dim != 1 {
        return Err(Error::KernelDimension { found: kernel_dim });
    }
    // The quotient against the energy E = x L_sym x^T / 2 is twice the
    // quotient against L_sym itself.
    let (min, max) = rayleigh_extremes(&b, &l_sym, KERNEL_TOL)?;
    Ok(EnergyConstants { c1: 2.0 * min, c2: 2.0 * max })
}

/// The sandwiched quadratic form `|x Pi^{1/2}(P - I)|_2^2`.
pub fn weighted_residual_sq(p: &TransitionMatrix, pi: &Distribution, x: &[f64]) -> f64 {
    let scaled: Vec<f64> = x.iter().zip(pi.values()).map(|(xi, w)| xi * w.sqrt()).collect();
    p.residual(&scaled).iter().map(|v| v * v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dirichlet_energy;
    use crate::sample::{random_irreducible_chain, random_vector, rng};
    use crate::stationary::stationary_dense;

    #[test]
    fn uniform_chain_sandwich_is_equality() {
        // (P - I)(P - I)^T = I - R and Pi^{1/2} = n^{-1/2} I, so the quotient
        // against the energy is identically 2/n.
        let n = 6;
        let p = TransitionMatrix::uniform_complete(n);
        let pi = stationary_dense(&p).unwrap();
        let c = residual_energy_constants(&p, &pi).unwrap();
        let expect = 2.0 / n as f64;
        assert!((c.c1 - expect).abs() < 1e-12, "c1 = {}", c.c1);
        assert!((c.c2 - expect).abs() < 1e-12, "c2 = {}", c.c2);
    }

    #[test]
    fn sandwich_holds_on_random_vectors() {
        let p = random_irreducible_chain(5, 2, 11);
        let pi = stationary_dense(&p).unwrap();
        let (_, l_sym) = laplacians(&p, &pi).unwrap();
        let c = residual_energy_constants(&p, &pi).unwrap();
        assert!(c.c1 > 0.0 && c.c1 <= c.c2);
        let mut rng = rng(99);
        for _ in 0..1000 {
            let x = random_vector(&mut rng, 5);
            let e = dirichlet_energy(&x, &l_sym).unwrap();
            let q = weighted_residual_sq(&p, &pi, &x);
            assert!(c.c1 * e <= q + 1e-10);
            assert!(q <= c.c2 * e + 1e-10);
        }
    }

    #[test]
    fn lazy_reversible_closed_form() {
        // For a reversible chain, B shares eigenvectors with L_sym only after
        // the Pi weights are absorbed; the uniform chain is the exactly
        // solvable case and the general sandwich is covered above.
        let n = 4;
        let p = TransitionMatrix::uniform_complete(n);
        let half = p.mixture(&TransitionMatrix::from_dense(&DMatrix::identity(n, n)).unwrap(), 0.5).unwrap();
        let pi = stationary_dense(&half).unwrap();
        let c = residual_energy_constants(&half, &pi).unwrap();
        // Lazy uniform chain: P = (I + R)/2, quotient eigenvalues all equal
        // (1 - lambda_i)/2 * 2/n * 2 = (2/n) * (1 - lambda_i) on the complement,
        // with 1 - lambda_i = 1/2 fixed.
        let expect = 2.0 / n as f64 * 0.5;
        assert!((c.c1 - expect).abs() < 1e-12, "c1 = {}", c.c1);
        assert!((c.c2 - expect).abs() < 1e-12, "c2 = {}", c.c2);
    }
}
