use thiserror::Error;

/// Errors shared across the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Syntax error while parsing an expression, point, word file or matrix.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// An exponent polynomial with nonzero constant term was supplied.
    #[error("exponent polynomial has nonzero constant term")]
    ConstantTermInExponent,

    /// Exact division failed: some coefficient polynomial is not divisible.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    /// Division by a zero polynomial or zero scalar.
    #[error("division by zero")]
    ZeroDivisor,

    /// Surface polynomial has degree below the supported minimum.
    #[error("surface polynomial degree {0} is below the minimum of 4")]
    DegreeTooLow(usize),

    /// Surface polynomial has a repeated root.
    #[error("surface polynomial has non-simple roots: gcd(p, p') = {0}")]
    NonSimpleRoots(String),

    /// Two words expected to commute do not.
    #[error("words do not commute")]
    NotCommuting,

    /// A required input was identically zero.
    #[error("input `{0}` must be nonzero")]
    ZeroInput(&'static str),

    /// Matrix dimension outside the supported range.
    #[error("matrix dimension {0} outside supported range 3..=6")]
    BadDimension(usize),

    /// Matrix entries violate the required shape.
    #[error("bad matrix shape: {0}")]
    BadMatrixShape(String),

    /// A documented operation precondition was violated.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
