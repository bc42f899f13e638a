use std::fmt;

use thiserror::Error;

use crate::{Cost, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position of a parse failure, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {at}: {message}")]
    Parse { at: Position, message: String },

    #[error("unsupported TSPLIB input: {0}")]
    Unsupported(String),

    #[error("instance has no vertices")]
    EmptyInstance,

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("asymmetric cost: c({u},{v}) = {uv} but c({v},{u}) = {vu}")]
    Asymmetric { u: Vertex, v: Vertex, uv: Cost, vu: Cost },

    #[error("negative cost c({u},{v}) = {cost}")]
    NegativeCost { u: Vertex, v: Vertex, cost: Cost },

    #[error("non-zero diagonal c({v},{v}) = {cost}")]
    NonZeroDiagonal { v: Vertex, cost: Cost },

    #[error("invalid generator arguments: {0}")]
    InvalidArgument(String),

    #[error("generator gave up after {attempts} attempts")]
    RetryLimit { attempts: usize },

    #[error("too many bad vertices: |V^b| = {bad} exceeds the limit of {limit}")]
    TooManyBad { bad: usize, limit: usize },

    #[error("instance too large for {what}: n = {n}, limit {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    /// True for refusals caused by the size or parameter guard rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::TooManyBad { .. } | Error::TooLarge { .. })
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
