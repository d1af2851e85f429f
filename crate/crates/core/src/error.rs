use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseNaturalError {
    #[error("empty number")]
    Empty,
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidDigit { ch: char, pos: usize },
    #[error("leading zeros are not allowed")]
    LeadingZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("subtraction underflow")]
    Underflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("digit {0} is out of range 0..=9")]
    InvalidDigit(u8),
    #[error("digit string is empty")]
    EmptyDigits,
    #[error(transparent)]
    Parse(#[from] ParseNaturalError),
}

/// Violated operation preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreconditionError {
    #[error("input must be at least {min}, got {got}")]
    TooSmall { min: u64, got: String },
    #[error("al-Khwarizmi's rule divides by 2E and is undefined for an integer root of 0")]
    ZeroRoot,
    #[error("scaling base must be at least 2, got {0}")]
    ScalingBase(String),
    #[error("scaling exponent must be at least 1")]
    ScalingExponent,
    #[error("decimal places must be at least 1")]
    NoPlaces,
    #[error("sexagesimal depth must be at least 1")]
    NoDepth,
    #[error("Newton iterate must be nonzero")]
    ZeroIterate,
    #[error("work row {work_row} and last digit {last_digit} do not halve to a root")]
    CorruptBoard { work_row: String, last_digit: u8 },
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}
