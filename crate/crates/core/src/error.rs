use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which side of a matrix an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("index sets have different sizes ({rows} rows, {cols} columns)")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("{axis} index {index} is out of range 1..={bound}")]
    IndexOutOfRange {
        axis: Axis,
        index: usize,
        bound: usize,
    },
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector is empty")]
    EmptyVector,
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("{what}: estimated {estimate} exceeds guard {limit}; {advice}")]
    GuardExceeded {
        what: &'static str,
        estimate: BigUint,
        limit: BigUint,
        advice: &'static str,
    },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("no edge {tail} -> {head}")]
    MissingEdge { tail: String, head: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
