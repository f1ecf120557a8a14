use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("operator not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {budget} nodes exceeded ({context})")]
    BudgetExceeded { budget: usize, context: String },

    #[error("unsupported reducibility query: {0}")]
    OracleMiss(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
