use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NotConverged { sweeps: usize, residual: f64 },

    #[error("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid overlaps: radicand {radicand:.3e} is negative")]
    InvalidOverlap { radicand: f64 },

    #[error("inconsistent Gram matrix: {0}")]
    InconsistentGram(String),

    #[error("family `{family}` does not support {what}")]
    Unsupported { family: String, what: String },

    #[error("circuit mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },

    #[error("ambiguous identification: labels `{first}` and `{second}` share detector {detector}")]
    AmbiguousIdentification {
        detector: String,
        first: String,
        second: String,
    },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
