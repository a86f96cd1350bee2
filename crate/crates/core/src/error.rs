use thiserror::Error;

/// Everything that can go wrong while building parameters, evaluating a
/// series or checking a recursion formula.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected order {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular (min pivot {min_pivot:e} below threshold {threshold:e})")]
    SingularMatrix { min_pivot: f64, threshold: f64 },

    #[error("shifted matrix base + {n}I is singular")]
    SingularShift { n: i64 },

    #[error("iteration did not converge: {0}")]
    NonConvergent(String),

    #[error("series not converged after {degrees_used} degrees (last increment {last_increment_norm:e})")]
    NotConverged {
        degrees_used: usize,
        last_increment_norm: f64,
    },

    #[error("point outside the convergence region of {kind}: {detail}")]
    DomainViolation { kind: String, detail: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("failed to generate a commuting family after {tries} tries")]
    GenerationFailed { tries: usize },

    #[error("floating point overflow in {0}")]
    Overflow(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
