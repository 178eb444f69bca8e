//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by exact-series arithmetic and the invariant pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Binary operation on series over different variable contexts.
    #[error("variable context mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    /// Window intersection is empty for a variable.
    #[error("empty window intersection for variable `{0}`")]
    EmptyWindow(String),

    /// A variable name is not part of the series context.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// Binomial power of a series whose constant term is not 1.
    #[error("binomial power base must have constant term 1")]
    NonUnitConstantTerm,

    /// Binomial power whose expansion cannot terminate inside the window.
    #[error("binomial power does not terminate inside the window: {0}")]
    NonTerminatingExpansion(String),

    /// Coefficient requested outside the truncation window.
    #[error("exponent {0:?} lies outside the truncation window")]
    OutsideWindow(Vec<i64>),

    /// A parameter is outside its documented validity range.
    #[error("{0}")]
    OutOfRange(String),

    /// Reducible-curve correction requested outside the stated case table.
    #[error("correction term not defined for degree {d}, point count {n}")]
    OutsideCaseTable { d: i64, n: i64 },

    /// Basis change applied to a polynomial that is not symmetric.
    #[error("input is not symmetric under {0} -> 1/{0}")]
    AsymmetricInput(String),

    /// Basis change applied to a polynomial with mixed exponent parity.
    #[error("inconsistent exponent parity in variable `{0}`")]
    ParityMismatch(String),

    /// Character peeling left a remainder that is not in the integer span.
    #[error("character expansion failed at (2jL, 2jR) = ({0}, {1})")]
    CharacterRemainder(i64, i64),

    /// Mismatched truncation orders between graded series.
    #[error("inconsistent truncation orders: {0} vs {1}")]
    InconsistentOrders(usize, usize),

    /// Malformed JSON input.
    #[error("invalid JSON input: {0}")]
    InvalidJson(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
