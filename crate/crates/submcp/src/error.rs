use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A subset refers to elements outside the ground set.
    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    /// Blocks are not disjoint, not covering, or empty.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A declared property (symmetry, monotonicity, matroid axioms) failed verification.
    #[error("property violation: {0}")]
    PropertyViolation(String),

    /// No feasible partition / split exists for the given constraints.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An invariant the underlying theory guarantees was violated at runtime.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    /// The input is too large for an exhaustive computation.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("validation error in field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(field: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: 1 for bad input / infeasibility,
    /// 2 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InternalInvariant(_) => 2,
            _ => 1,
        }
    }
}
