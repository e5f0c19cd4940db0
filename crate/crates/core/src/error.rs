use thiserror::Error;

/// Errors shared by every stage of the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("family does not give a semisimple algebra: {0}")]
    NotSemisimpleFamily(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    /// The message without the kind prefix.
    pub fn detail(&self) -> &str {
        match self {
            Error::SingularMatrix => "singular matrix",
            Error::DimensionMismatch(m)
            | Error::MalformedInput(m)
            | Error::NotSemisimple(m)
            | Error::NotSemisimpleFamily(m)
            | Error::BudgetExceeded(m)
            | Error::InvariantViolated(m) => m,
        }
    }

    /// Short stable tag used on the CLI error line and in FFI error codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::SingularMatrix => "singular_matrix",
            Error::MalformedInput(_) => "malformed_input",
            Error::NotSemisimple(_) => "not_semisimple",
            Error::NotSemisimpleFamily(_) => "not_semisimple_family",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::InvariantViolated(_) => "invariant_violated",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
