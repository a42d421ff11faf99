//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the exact kernels and the layers built on them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A determinant-style operation received a non-square matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    /// Matrix construction received an entry list of the wrong length.
    #[error("entry list has length {got}, expected {rows}x{cols} = {expected}")]
    BadDimensions {
        rows: usize,
        cols: usize,
        got: usize,
        expected: usize,
    },

    /// A row/column index pair violated the bounds of a minor operation.
    #[error("index out of bounds: {what}")]
    IndexOutOfBounds { what: String },

    /// A moment sequence is too short for the requested computation.
    #[error("insufficient moments: need {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    /// A term sequence is too short for the requested computation.
    #[error("insufficient terms: need {needed}, have {available}")]
    InsufficientTerms { needed: usize, available: usize },

    /// A leading principal Hankel minor vanished where the moment
    /// functional must be non-degenerate.
    #[error("degenerate moment functional: {size}x{size} Hankel minor is zero")]
    DegenerateHankel { size: usize },

    /// A polynomial claimed to be symmetric is not.
    #[error("polynomial is not symmetric under permutation of variables")]
    NotSymmetric,

    /// A distinct-point evaluation was asked for a repeated point; the
    /// confluent evaluation handles that case.
    #[error("repeated point in configuration; use the confluent evaluation")]
    RepeatedPoint,

    /// A recurrence coefficient `t_i` is zero; the three-term recurrence
    /// requires every `t_i` to be nonzero.
    #[error("recurrence coefficient t_{index} is zero")]
    ZeroT { index: usize },

    /// Brute-force enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {required} tuples > limit {limit}")]
    BudgetExceeded { required: u128, limit: u128 },

    /// No recurrence of the requested order fits the sequence.
    #[error("no recurrence of the requested order fits the sequence")]
    NoRecurrence,

    /// Text could not be parsed as a rational or a rational list.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A JSON document does not match the expected schema.
    #[error("invalid JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
