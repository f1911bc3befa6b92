use thiserror::Error;

/// Errors raised by the engine. Verification verdicts are never errors; they
/// are reported through the various `*Report` types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatspecError {
    #[error("enumeration budget exceeded while {what}: needed more than {budget} candidates")]
    BudgetExceeded { what: String, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("fragment incomplete: missing {0}")]
    FragmentIncomplete(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

impl LatspecError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        LatspecError::Invalid(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        LatspecError::Parse { line, message: msg.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        LatspecError::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, LatspecError>;
