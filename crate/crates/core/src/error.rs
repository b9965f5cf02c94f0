use thiserror::Error;

use crate::exact::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied parameters outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),

    /// A mathematical check failed; carries a human-readable witness.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient {0} is not invertible")]
    NotInvertible(String),

    /// A fusion coefficient that is not a nonnegative integer.
    #[error("fusion coefficient N[{i}][{j}][{l}] = {value} is not a nonnegative integer")]
    Fusion {
        i: usize,
        j: usize,
        l: usize,
        value: String,
    },

    #[error("rejected: {0}")]
    Rejected(String),

    #[error("weight {weight} of summand {label} is not integral")]
    NonIntegralWeight { label: String, weight: Rational },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("search refused: {0}")]
    SearchTooLarge(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True for errors caused by bad input rather than failed mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_))
    }
}
