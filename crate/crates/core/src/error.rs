use thiserror::Error;

use crate::field::Params;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero rational function")]
    DivisionByZero,

    #[error("parameter context mismatch: {left} vs {right}")]
    ParamMismatch { left: Params, right: Params },

    #[error("symbol `{0}` is not part of the parameter context")]
    UnknownSymbol(String),

    #[error("assignment does not cover symbol `{0}`")]
    MissingSymbol(String),

    #[error("denominator vanishes at {0}")]
    VanishingDenominator(String),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<u32>),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("partitions have different sizes: {left} vs {right}")]
    UnequalTotals { left: u32, right: u32 },

    #[error("partition {partition:?} does not fit in {n} variables")]
    TooFewVariables { partition: Vec<u32>, n: usize },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("divergent trace: weight {0} has modulus >= 1")]
    Divergent(String),

    #[error("instance exceeds supported size: {0}")]
    Oversize(String),

    #[error("singular linear system")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
