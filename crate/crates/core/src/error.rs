use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {0} is negative but an ambient bound is set")]
    NegativeElement(i64),
    #[error("element {value} lies outside the ambient interval [1, {bound}]")]
    OutOfAmbient { value: i64, bound: u64 },
    #[error("element {0} exceeds the supported magnitude 2^48")]
    ValueTooLarge(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource guard exceeded: {what} needs {needed} units, budget is {budget}")]
    ResourceGuard {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("exact counter overflowed while computing {0}")]
    Overflow(&'static str),
    #[error("input refused: {0}")]
    HypothesisViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
