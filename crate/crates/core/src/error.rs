use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computed quantity that must be a nonnegative integer was not.
    #[error("inconsistent basket: {0}")]
    InconsistentBasket(String),

    /// A required field (e.g. `b_Q`) is absent.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Two independent computations disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
