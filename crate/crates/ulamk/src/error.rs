//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating, solving, reducing or
/// rendering. Variants carry enough context to name the offending
/// dimension, value or parameter.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate value {value} in {location}")]
    DuplicateValue { location: String, value: u32 },

    #[error("{location}: value {value} outside 1..={max}")]
    OutOfRange { location: String, value: u64, max: u64 },

    #[error("{location} has length {len}, expected {expected}")]
    LengthMismatch {
        location: String,
        len: usize,
        expected: usize,
    },

    #[error("source has {source_k} dimensions, target has {target_k}")]
    DimensionMismatch { source_k: usize, target_k: usize },

    #[error("an instance needs at least one dimension and one element")]
    EmptyInstance,

    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },

    #[error("solver requires k=1, instance has k={k}")]
    WrongDimension { k: usize },

    #[error("n={n} exceeds the exhaustive-search guard ({max})")]
    TooLarge { n: usize, max: usize },

    #[error("construction requires k == n, instance has k={k}, n={n}")]
    NotSquare { k: usize, n: usize },

    #[error("lifted instance would have {elements} elements, cap is {cap}")]
    LevelTooLarge { elements: u128, cap: u64 },

    #[error("clause {index} has {len} literals, expected 3")]
    MalformedClause { index: usize, len: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: u32 },

    #[error("set is not feasible ({context})")]
    NotFeasible { context: &'static str },

    #[error("cannot shrink dimension count from {from} to {to}")]
    ShrinkNotAllowed { from: usize, to: usize },

    #[error("insert position {pos} invalid in dimension {dim} (valid 1..={max})")]
    BadPosition { dim: usize, pos: usize, max: usize },

    #[error("move path fails verification: {reason}")]
    InvalidPath { reason: String },

    #[error("literal occurrences assign variable {var} both polarities")]
    InconsistentAssignment { var: usize },

    #[error("unknown suite `{name}`")]
    UnknownSuite { name: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
