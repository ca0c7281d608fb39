use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spin magnitude: 2s = {0} is not a non-negative integer")]
    InvalidSpin(f64),
    #[error("unsupported spin {0} for the coupled sites (expected 1/2 or 1)")]
    UnsupportedSpin(String),
    #[error("matrix is not Hermitian (deviation {deviation:e} exceeds {tolerance:e})")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("Hamiltonian leaks between m sectors (max entry {leak:e} above {tolerance:e})")]
    SectorLeakage { leak: f64, tolerance: f64 },
    #[error("state pair is not decoupled from the rest of its block (leak {leak:e})")]
    PairNotDecoupled { leak: f64 },
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("cannot parse label {0:?}")]
    LabelSyntax(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
