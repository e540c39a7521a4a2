use thiserror::Error;

/// Precondition and input errors. Verification failures are not errors: they
/// are reported through [`crate::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid input for {0}")]
    Zero(&'static str),
    #[error("logarithm argument must be at least 2, got {0}")]
    LogArgument(String),
    #[error("invalid Lucas parameters (u, v) = ({u}, {v}): {reason}")]
    LucasParams {
        u: i64,
        v: i64,
        reason: &'static str,
    },
    #[error("index n = {0} is outside the allowed range: {1}")]
    Index(u32, &'static str),
    #[error("invalid norm context (D, k) = ({d}, {k}): {reason}")]
    NormContext {
        d: u64,
        k: u64,
        reason: &'static str,
    },
    #[error("({x}, {y}, {z}) is not a solution: {reason}")]
    NotASolution {
        x: String,
        y: String,
        z: u32,
        reason: &'static str,
    },
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
