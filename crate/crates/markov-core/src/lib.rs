//! Exact and spectral computations on Markov chains.
//!
//! Stationary distributions by dense LU, time reversal and detailed balance,
//! the symmetric/antisymmetric decomposition, normalized and symmetrized
//! Laplacians, Dirichlet energy, Poincare constants, irreversibility
//! coefficients, and perturbation bounds for chain mixtures.
//!
//! All eigen- and inverse-based routines here are dense diagnostics intended
//! for desk scale (n up to a few thousand); the iterative solver crate never
//! depends on them to make progress.

pub mod energy;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod perturbation;
pub mod profile;
pub mod sample;
pub mod stationary;

pub use energy::{
    rayleigh_extremes, residual_energy_constants, weighted_residual_sq, EnergyConstants,
};
pub use error::{Error, Result};
pub use geometry::{
    decompose, dirichlet_energy, laplacians, poincare_constant, row_mul, ChainGeometry,
    KERNEL_TOL,
};
pub use matrix::{l1_norm, l2_norm, DenseMatrix, Distribution, TransitionMatrix, ROW_SUM_TOL};
pub use perturbation::{
    deviation_matrix, inf_norm, kappa_mixture_bound, schweitzer_bound, spectral_norm,
};
pub use profile::{
    irreversibility_profile, local_irreversibility, nearly_reversible_threshold,
    profile_from_geometry, IrreversibilityProfile,
};
pub use stationary::{is_reversible, stationary_dense, time_reversal, STATIONARY_RESIDUAL_TOL};
