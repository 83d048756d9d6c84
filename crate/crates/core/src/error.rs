use thiserror::Error;

use crate::su2::HalfInteger;

/// Errors produced by the state and operator constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator is not Hermitian (residual {residual:e})")]
    NonHermitianInput { residual: f64 },

    #[error("rotation operator is undefined at the pole label (gamma = infinity)")]
    PoleLabel,

    #[error("irrep mismatch: j = {left} vs j = {right}")]
    IrrepMismatch { left: HalfInteger, right: HalfInteger },

    #[error("photon-number sector mismatch: N = {left} vs N = {right}")]
    SectorMismatch { left: u32, right: u32 },

    #[error("the nonlinear Hamiltonian requires j > 0")]
    ZeroSpin,

    #[error("half-integer j = {0} is not covered by the two-component cat identity")]
    HalfIntegerUnsupported(HalfInteger),

    #[error("invalid photon number N = {0}, expected N >= 1")]
    InvalidN(u32),

    #[error("invalid weight 2m = {twice_m} for j = {j}")]
    InvalidWeight { j: HalfInteger, twice_m: i32 },

    #[error("expected {expected} amplitudes, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("malformed state file: {0}")]
    StateFile(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
