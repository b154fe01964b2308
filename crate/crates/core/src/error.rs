use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("unitary eigendecomposition failed after {attempts} draws (residual {residual:e})")]
    RetryExhausted { attempts: usize, residual: f64 },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid trace input: |tr U| = {trace_abs} for n = {n}")]
    InvalidTrace { n: usize, trace_abs: f64 },

    /// A degenerate energy statistic with a nontrivial trace deficit: no Hamiltonian
    /// with that statistic can produce the gate, so the bound is not defined.
    #[error("bound undefined: {0} is zero while |tr U| < n")]
    UndefinedBound(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid phase vector: {0}")]
    InvalidPhases(String),

    #[error("figure invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
