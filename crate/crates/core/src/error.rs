use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied parameters outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A division that must be exact left a remainder.
    #[error("inexact division at index {index}: {detail}")]
    InexactDivision { index: usize, detail: String },
    /// Coefficient domains or moduli of two operands disagree.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    /// An expression that must be integral produced a fraction.
    #[error("non-integral coefficient at index {0}")]
    NonIntegral(usize),
    /// A denominator is not a unit modulo m.
    #[error("denominator not invertible modulo {modulus} at index {index}")]
    NotInvertible { modulus: u64, index: usize },
    /// Series too short for the requested system.
    #[error("series too short: need {needed} coefficients, have {have}")]
    TooShort { needed: usize, have: usize },
    /// Operation not available for this modulus.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Evidence was insufficient to reach a verdict.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// Malformed file or JSON document.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
