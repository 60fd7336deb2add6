//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration would have produced more objects than the caller's
    /// guard allows. Enumerations never truncate silently.
    #[error("guard exceeded in {context}: would need {required}, guard is {guard}")]
    GuardExceeded {
        context: String,
        required: u128,
        guard: u64,
    },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("subspace is not closed under the bracket")]
    NotASubring,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("change of basis matrix is singular")]
    SingularMatrix,
    #[error("module action is not a Lie homomorphism at base pair ({0}, {1})")]
    InvalidAction(usize, usize),
    #[error("adjoint map of the element is not nilpotent")]
    NotNilpotent,
    #[error("nilpotency index {index} exceeds characteristic {p}")]
    IndexExceedsCharacteristic { index: usize, p: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("invalid ring file: {0}")]
    InvalidFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn guard(context: &str, required: u128, guard: u64) -> Self {
        Error::GuardExceeded {
            context: context.to_string(),
            required,
            guard,
        }
    }

    pub fn is_guard_exceeded(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
