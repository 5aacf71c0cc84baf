use thiserror::Error;

/// Errors produced by chain construction and the dense diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("row {row} sums to {sum}, expected 1 within {tol}")]
    RowSumMismatch { row: usize, sum: f64, tol: f64 },
    #[error("negative probability {value} at ({row}, {col})")]
    NegativeProbability { row: usize, col: usize, value: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("column {col} out of bounds for {n} states (row {row})")]
    ColumnOutOfBounds { row: usize, col: usize, n: usize },
    #[error("duplicate column {col} in row {row}")]
    DuplicateColumn { row: usize, col: usize },
    #[error("chain is not irreducible")]
    NotIrreducible,
    #[error("stationary vector has a non-positive entry")]
    DegenerateStationary,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("Laplacian kernel has dimension {found}, expected 1")]
    KernelDimension { found: usize },
    #[error("kernels of the residual form and the Laplacian disagree")]
    KernelMismatch,
    #[error("fundamental matrix I - R + 1'pi is singular")]
    SingularFundamentalMatrix,
    #[error("perturbation bound inapplicable: eps * |(Q-R)D|_inf = {value} >= 1")]
    BoundInapplicable { value: f64 },
    #[error("mixture weight {0} outside [0, 1]")]
    InvalidMixtureWeight(f64),
    #[error("empty distribution")]
    EmptyDistribution,
    #[error("distribution entry {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },
    #[error("distribution has zero total mass")]
    ZeroMass,
}

pub type Result<T> = std::result::Result<T, Error>;
