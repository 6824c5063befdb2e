use core::fmt;

use crate::arith::Rat;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// The operation is undefined on the zero polynomial.
    ZeroPolynomial,
    /// Quadratic-ring operands in different modes.
    RingMismatch,
    /// Negative power of an element whose norm is not a nonzero constant.
    NotInvertible,
    TruncationTooShort {
        needed: usize,
        got: usize,
    },
    /// `exp` of a series with nonzero constant term.
    NonZeroConstantTerm,
    /// A coefficient has a pole at the expansion point.
    PoleAtOrigin,
    /// The leading recurrence coefficient vanishes and the term it would
    /// determine was not supplied.
    Undetermined {
        index: usize,
    },
    /// Supplied or forced terms violate the recurrence.
    Inconsistent {
        index: usize,
    },
    InsufficientInitialData {
        needed: usize,
        got: usize,
    },
    HorizonExceeded {
        x: u64,
        horizon: u64,
    },
    NotASolution,
    NotDivisible {
        remainder: Rat,
    },
    InvalidInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::RingMismatch => f.write_str("quadratic-ring mode mismatch"),
            Error::NotInvertible => f.write_str("element is not a unit with constant norm"),
            Error::TruncationTooShort { needed, got } => {
                write!(
                    f,
                    "truncation order {got} too short, need at least {needed}"
                )
            }
            Error::NonZeroConstantTerm => f.write_str("exp needs a series with zero constant term"),
            Error::PoleAtOrigin => f.write_str("coefficient has a pole at z = 0"),
            Error::Undetermined { index } => {
                write!(f, "UNDETERMINED: a_{index} is free (leading coefficient vanishes) and was not supplied")
            }
            Error::Inconsistent { index } => {
                write!(f, "INCONSISTENT: recurrence fails at a_{index}")
            }
            Error::InsufficientInitialData { needed, got } => {
                write!(f, "need {needed} initial terms, got {got}")
            }
            Error::HorizonExceeded { x, horizon } => {
                write!(f, "x = {x} lies beyond horizon {horizon}")
            }
            Error::NotASolution => {
                f.write_str("NOT_A_SOLUTION: pair does not satisfy X^2 - (z^2-1)Y^2 = 1")
            }
            Error::NotDivisible { remainder } => {
                write!(f, "NOT_DIVISIBLE: y(1) - lambda = {remainder}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
