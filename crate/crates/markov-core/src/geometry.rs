use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Distribution, TransitionMatrix};
use crate::stationary::stationary_dense;

/// Eigenvalues of the symmetrized Laplacian below this count as kernel.
pub const KERNEL_TOL: f64 = 1e-10;

fn check_pi(p: &TransitionMatrix, pi: &Distribution) -> Result<()> {
    if pi.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), actual: pi.len() });
    }
    if pi.values().iter().any(|&v| v <= 0.0) {
        return Err(Error::DegenerateStationary);
    }
    Ok(())
}

/// The similarity image `Pi^{1/2} P Pi^{-1/2}`; symmetric iff `P` is reversible.
fn similarity_image(p: &TransitionMatrix, pi: &Distribution) -> DenseMatrix {
    let n = p.n();
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let (cols, vals) = p.row(i);
        let si = pi[i].sqrt();
        for (&j, &pij) in cols.iter().zip(vals) {
            m[(i, j)] = si * pij / pi[j].sqrt();
        }
    }
    m
}

/// Symmetric/antisymmetric split `S = Pi^{1/2}(P + P*)Pi^{-1/2}/2`,
/// `A = Pi^{1/2}(P - P*)Pi^{-1/2}/2`.
///
/// Both parts are computed from the similarity image of `P` alone, since the
/// image of the time reversal is exactly its transpose; this makes `S^T = S`
/// and `A^T = -A` hold to the bit.
pub fn decompose(p: &TransitionMatrix, pi: &Distribution) -> Result<(DenseMatrix, DenseMatrix)> {
    check_pi(p, pi)?;
    let m = similarity_image(p, pi);
    let mt = m.transpose();
    let s = (&m + &mt) * 0.5;
    let a = (&m - &mt) * 0.5;
    Ok((s, a))
}

/// Normalized and symmetrized Laplacians:
/// `L_norm = I - Pi^{1/2} P Pi^{-1/2}`, `L_sym = (L_norm + L_norm^T)/2`.
pub fn laplacians(p: &TransitionMatrix, pi: &Distribution) -> Result<(DenseMatrix, DenseMatrix)> {
    check_pi(p, pi)?;
    let n = p.n();
    let l_norm = DenseMatrix::identity(n, n) - similarity_image(p, pi);
    let l_sym = (&l_norm + l_norm.transpose()) * 0.5;
    Ok((l_norm, l_sym))
}

/// Dirichlet energy `E(y) = y L_sym y^T / 2`.
pub fn dirichlet_energy(y: &[f64], l_sym: &DenseMatrix) -> Result<f64> {
    if y.len() != l_sym.nrows() {
        return Err(Error::DimensionMismatch { expected: l_sym.nrows(), actual: y.len() });
    }
    let v = DVector::from_column_slice(y);
    Ok(0.5 * (l_sym * &v).dot(&v))
}

/// Smallest nonzero eigenvalue of a PSD matrix with one-dimensional kernel.
///
/// Eigenvalues below [`KERNEL_TOL`] count as the kernel; more than one of
/// them is a [`Error::KernelDimension`] failure.
pub fn poincare_constant(l_sym: &DenseMatrix) -> Result<f64> {
    let eigs = l_sym.clone().symmetric_eigen().eigenvalues;
    let mut vals: Vec<f64> = eigs.iter().copied().collect();
    vals.sort_unstable_by(|a, b| a.total_cmp(b));
    let kernel = vals.iter().take_while(|&&v| v < KERNEL_TOL).count();
    if kernel != 1 {
        return Err(Error::KernelDimension { found: kernel });
    }
    Ok(vals[1])
}

/// Dense spectral context of a chain: stationary law, the symmetric and
/// antisymmetric parts, both Laplacians, the Poincare constant, and the local
/// irreversibility norms. Computed once and shared by the diagnostics and the
/// energy instrumentation. Desk scale only.
#[derive(Debug, Clone)]
pub struct ChainGeometry {
    pi: Distribution,
    sqrt_pi: Vec<f64>,
    sym: DenseMatrix,
    anti: DenseMatrix,
    l_norm: DenseMatrix,
    l_sym: DenseMatrix,
    mu: f64,
    kappa: Vec<f64>,
}

impl ChainGeometry {
    /// Computes the stationary distribution internally.
    pub fn new(p: &TransitionMatrix) -> Result<Self> {
        let pi = stationary_dense(p)?;
        Self::with_pi(p, pi)
    }

    pub fn with_pi(p: &TransitionMatrix, pi: Distribution) -> Result<Self> {
        check_pi(p, &pi)?;
        let (sym, anti) = decompose(p, &pi)?;
        let n = p.n();
        let l_sym = DenseMatrix::identity(n, n) - &sym;
        let l_norm = &l_sym - &anti;
        let mu = poincare_constant(&l_sym)?;
        let kappa = (0..n).map(|i| anti.row(i).norm()).collect();
        let sqrt_pi = pi.values().iter().map(|v| v.sqrt()).collect();
        Ok(Self { pi, sqrt_pi, sym, anti, l_norm, l_sym, mu, kappa })
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn pi(&self) -> &Distribution {
        &self.pi
    }

    pub fn sqrt_pi(&self) -> &[f64] {
        &self.sqrt_pi
    }

    pub fn sym(&self) -> &DenseMatrix {
        &self.sym
    }

    pub fn anti(&self) -> &DenseMatrix {
        &self.anti
    }

    pub fn l_norm(&self) -> &DenseMatrix {
        &self.l_norm
    }

    pub fn l_sym(&self) -> &DenseMatrix {
        &self.l_sym
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Local irreversibility `kappa_i = |A_{i,:}|_2`.
    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa.iter().copied().fold(0.0, f64::max)
    }

    /// Map an iterate into energy coordinates: `y = x Pi^{-1/2}`.
    pub fn to_energy_coords(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.sqrt_pi).map(|(xi, s)| xi / s).collect()
    }

    /// `E(y) = y L_sym y^T / 2`.
    pub fn energy(&self, y: &[f64]) -> f64 {
        dirichlet_energy(y, &self.l_sym).expect("geometry dimensions agree")
    }

    /// The energy gradient `s = y L_sym` (row convention).
    pub fn sym_residual(&self, y: &[f64]) -> Vec<f64> {
        row_mul(&self.l_sym, y)
    }

    /// The observed residual in energy coordinates, `y L_norm`.
    pub fn norm_residual(&self, y: &[f64]) -> Vec<f64> {
        row_mul(&self.l_norm, y)
    }

    /// The perturbation `y A` induced by the irreversible part.
    pub fn perturbation(&self, y: &[f64]) -> Vec<f64> {
        row_mul(&self.anti, y)
    }
}

/// Row-vector times matrix: `v M` for row `v`.
pub fn row_mul(m: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    let v = DVector::from_column_slice(v);
    m.tr_mul(&v).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::l2_norm;
    use crate::sample::{random_irreducible_chain, random_walk_on_path};

    #[test]
    fn reversible_chain_has_zero_antisymmetric_part() {
        let (p, pi) = random_walk_on_path(3);
        let (_, a) = decompose(&p, &pi).unwrap();
        assert!(a.abs().max() < 1e-14);
    }

    #[test]
    fn cycle_antisymmetric_rows() {
        // Uniform pi cancels the scaling: A = (P - P^T)/2, row norms 1/sqrt(2).
        let p = TransitionMatrix::directed_cycle(3);
        let pi = stationary_dense(&p).unwrap();
        let (s, a) = decompose(&p, &pi).unwrap();
        let expect = (p.to_dense() - p.to_dense().transpose()) * 0.5;
        assert!((a.clone() - expect).abs().max() < 1e-14);
        for i in 0..3 {
            assert!((a.row(i).norm() - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        }
        assert!((s.clone() - s.transpose()).abs().max() == 0.0);
    }

    #[test]
    fn split_reassembles_the_similarity_image() {
        let p = random_irreducible_chain(12, 3, 42);
        let pi = stationary_dense(&p).unwrap();
        let (s, a) = decompose(&p, &pi).unwrap();
        let m = similarity_image(&p, &pi);
        assert!((s + a - m).abs().max() < 1e-14);
    }

    #[test]
    fn laplacian_kernel_is_sqrt_pi() {
        let p = random_irreducible_chain(10, 2, 7);
        let pi = stationary_dense(&p).unwrap();
        let (l_norm, l_sym) = laplacians(&p, &pi).unwrap();
        let sq: Vec<f64> = pi.values().iter().map(|v| v.sqrt()).collect();
        assert!(l2_norm(&row_mul(&l_sym, &sq)) < 1e-10);
        assert!(l2_norm(&row_mul(&l_norm, &sq)) < 1e-10);
    }

    #[test]
    fn uniform_chain_spectrum() {
        let p = TransitionMatrix::uniform_complete(5);
        let pi = stationary_dense(&p).unwrap();
        let (l_norm, l_sym) = laplacians(&p, &pi).unwrap();
        assert!((l_norm - &l_sym).abs().max() < 1e-14);
        assert!((poincare_constant(&l_sym).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversible_laplacians_coincide() {
        let (p, pi) = random_walk_on_path(5);
        let (l_norm, l_sym) = laplacians(&p, &pi).unwrap();
        assert!((l_norm - l_sym).abs().max() < 1e-14);
    }

    #[test]
    fn cycle_symmetrized_spectrum() {
        // Circulant (P + P^T)/2 has eigenvalues cos(2 pi k / 3).
        let p = TransitionMatrix::directed_cycle(3);
        let pi = stationary_dense(&p).unwrap();
        let (_, l_sym) = laplacians(&p, &pi).unwrap();
        assert!((poincare_constant(&l_sym).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn energy_vanishes_exactly_on_kernel() {
        let p = random_irreducible_chain(8, 2, 3);
        let g = ChainGeometry::new(&p).unwrap();
        assert!(g.energy(g.sqrt_pi()).abs() < 1e-12);
        assert_eq!(g.energy(&vec![0.0; 8]), 0.0);
    }

    #[test]
    fn energy_of_basis_vector_under_uniform_chain() {
        let p = TransitionMatrix::uniform_complete(4);
        let pi = stationary_dense(&p).unwrap();
        let (_, l_sym) = laplacians(&p, &pi).unwrap();
        let mut e1 = vec![0.0; 4];
        e1[0] = 1.0;
        let e = dirichlet_energy(&e1, &l_sym).unwrap();
        assert!((e - 0.5 * (1.0 - 0.25)).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = TransitionMatrix::uniform_complete(4);
        let pi = stationary_dense(&p).unwrap();
        let (_, l_sym) = laplacians(&p, &pi).unwrap();
        assert!(matches!(
            dirichlet_energy(&[1.0, 2.0], &l_sym),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn disconnected_kernel_is_detected() {
        // Block-diagonal symmetric Laplacian with two kernel directions.
        let mut l = DenseMatrix::zeros(4, 4);
        for (i, j) in [(0, 1), (2, 3)] {
            l[(i, i)] = 1.0;
            l[(j, j)] = 1.0;
            l[(i, j)] = -1.0;
            l[(j, i)] = -1.0;
        }
        assert!(matches!(
            poincare_constant(&l),
            Err(Error::KernelDimension { found: 2 })
        ));
    }
}
