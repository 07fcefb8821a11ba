//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by semiflow operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes are incompatible.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A matrix or vector was constructed with NaN/Inf entries, or an
    /// evaluation produced one.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Linear solve hit a matrix that is singular to working precision.
    #[error("matrix is singular to working precision (condition estimate {cond:.3e})")]
    Singular { cond: f64 },

    /// A Hermitian matrix was required.
    #[error("matrix is not Hermitian (deviation {deviation:.3e} exceeds {tol:.3e})")]
    NotHermitian { deviation: f64, tol: f64 },

    /// A map failed a complete-positivity precondition.
    #[error("map is not completely positive (min Choi eigenvalue {min_eigenvalue:.3e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    /// Generic domain error (invalid argument, empty Kraus set, ...).
    #[error("{0}")]
    Domain(String),

    /// A time parameter must be a multiple of the grid step.
    #[error("t = {t} is not aligned to the grid step {delta}")]
    GridAlignment { t: f64, delta: f64 },

    /// A stated hypothesis of the construction fails (e.g. Re λ ≤ ω).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Dimension exceeds a documented implementation cap.
    #[error("dimension {d} exceeds the implementation cap {cap}")]
    DimensionCap { d: usize, cap: usize },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
