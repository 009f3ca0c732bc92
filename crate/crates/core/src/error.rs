use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("not divisible")]
    NotDivisible,
    #[error("operator is already homogeneous")]
    AlreadyHomogeneous,
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("ansatz error: {0}")]
    Ansatz(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("time budget exceeded")]
    BudgetExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;
