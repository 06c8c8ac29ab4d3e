//! Error type shared by every module in the crate.

use thiserror::Error;

use crate::rational::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A formula needed to divide by `q^power - 1` and the given q makes that
    /// factor zero. Degenerate q values are rejected, never approximated.
    #[error("degenerate q: q^{power} = 1 for q = {q}")]
    DegenerateQ { q: Rat, power: usize },

    /// q = 0 is excluded globally; the inverse braiding and the inverse
    /// antipode both need q⁻¹.
    #[error("q must be a nonzero rational")]
    ZeroQ,

    #[error("index out of range: j = {j} exceeds i = {i}")]
    IndexOutOfRange { i: usize, j: usize },

    #[error("cannot parse {input:?} as a rational")]
    InvalidRational { input: String },

    #[error("coefficient vector has length {actual}, expected {expected}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("inversion of zero in a field of order {order}")]
    DivisionByZero { order: u64 },

    #[error("matrix is singular")]
    Singular,

    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },

    #[error("group closure exceeded the order bound {max_order}")]
    OrderBoundExceeded { max_order: usize },

    #[error("enumerating {required} independent {j}-tuples exceeds the budget {max_tuples}")]
    TupleBudgetExceeded {
        j: usize,
        required: u64,
        max_tuples: usize,
    },

    /// Averaged fixed-tuple counts over a group must be whole numbers; a
    /// fractional value means the input was not closed under multiplication.
    #[error("orbit count L_{j} = {value} is not a nonnegative integer")]
    NonIntegerOrbitCount { j: usize, value: Rat },

    #[error("operator is not nilpotent: its {power}-th power is nonzero")]
    NotNilpotent { power: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
