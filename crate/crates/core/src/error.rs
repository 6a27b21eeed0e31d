use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("interval {0} straddles zero; sign is undetermined")]
    UndeterminedSign(String),
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("target degree {target} is below polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("degree {0} is not supported (expected 1..=5)")]
    UnsupportedDegree(u32),
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("point set is not unisolvent for degree {0}")]
    NotUnisolvent(u32),
    #[error("expected {expected} points, found {found}")]
    Cardinality { expected: usize, found: usize },
    #[error("partitions have unequal weights {0} and {1}")]
    UnequalWeights(u32, u32),
    #[error("partition {0:?} does not majorize {1:?}")]
    NotMajorized(Vec<u32>, Vec<u32>),
    #[error("partition has {parts} nonzero parts but only {vars} variables")]
    TooManyParts { parts: usize, vars: usize },
    #[error("Lagrange vector exceeds 1 in sup norm (max {0}); Fejer exponent undefined")]
    UndefinedExponent(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
