use thiserror::Error;

/// Errors raised by the exact and numeric kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable contexts differ: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("zeta pole at s=0")]
    ZetaPole,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("near-pole evaluation: |denominator| = {0:e}")]
    NearPole(f64),
    #[error("W(C_{k}) is too large for exact enumeration (limit k <= {limit}); use numeric mode")]
    GroupTooLarge { k: usize, limit: usize },
    #[error("{what} not dominant: {values:?}")]
    NotDominant { what: &'static str, values: Vec<i64> },
    #[error("invalid cone triple: {0}")]
    InvalidTriple(String),
    #[error("{what} index {index} out of range 1..={bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rank constraint violated: {0}")]
    Rank(String),
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
