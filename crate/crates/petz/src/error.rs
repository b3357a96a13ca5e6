use thiserror::Error;

/// Error type shared by every module.
///
/// Diagnostic magnitudes are reported as `f64` regardless of the scalar the
/// computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} cols")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |A - A^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("trace is {trace} but must be 1")]
    TraceNotOne { trace: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("weights sum to {sum} but must sum to 1")]
    NotNormalized { sum: f64 },

    #[error("negative weight {value:e} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("mapping is not an involution at index {index}")]
    NotInvolution { index: usize },

    #[error("mapping index {value} at {index} is out of range for length {len}")]
    IndexOutOfRange { index: usize, value: usize, len: usize },

    #[error("alpha = {alpha} is outside the valid range (must be > 0)")]
    InvalidAlpha { alpha: f64 },

    #[error("alpha = 1 is the relative-entropy limit; use quantum_relative_entropy")]
    AlphaIsOne,

    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("means coincide; the inverted relation requires distinct means")]
    EqualMeans,

    #[error("current has zero mean; the exchange relation requires a nonzero mean")]
    ZeroMeanCurrent,

    #[error("current is not antisymmetric under the involution at index {index}")]
    NotAntisymmetric { index: usize },

    #[error("rank {rank} is out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigenConvergence { sweeps: usize },

    #[error("invalid matrix file: {0}")]
    InvalidFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
