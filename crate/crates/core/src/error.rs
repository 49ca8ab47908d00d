use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("elements of {left} and {right} combined without an explicit embedding")]
    FieldMismatch { left: String, right: String },

    #[error("integrality violation: {0}")]
    Integrality(String),

    #[error("precision too low: {0}")]
    Precision(String),

    #[error("degenerate polygon: {0}")]
    Degenerate(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::BudgetExceeded { what, needed, limit }
    }
}
