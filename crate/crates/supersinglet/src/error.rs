use thiserror::Error;

/// Errors produced by basis construction, state factories, and the
/// distillation engines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("qubit count {n} must be even")]
    OddQubitCount { n: usize },

    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCountOutOfRange { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("permutation {0:?} is not a bijection of 1..=n")]
    InvalidPermutation(Vec<usize>),

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("postselection branch has vanishing probability (p = {p:.3e})")]
    VanishingSuccessProbability { p: f64 },

    #[error("full engine supports at most {max} qubits (requested {n}); use the truncated engine")]
    FullEngineMemoryGate { n: usize, max: usize },

    #[error("state has spin s > 0 population {population:.3e}; the truncated engine requires a pure spin-zero input")]
    SectorLeakage { population: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
