//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A table is too short for the requested evaluation point.
    #[error("range error: {0}")]
    Range(String),

    /// Requested table size exceeds the configured hard cap.
    #[error("size error: n_max {requested} exceeds hard cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    /// The zero table does not reach the requested height.
    #[error("coverage error: need zeros up to {needed}, table ends at {max_height}")]
    Coverage { needed: f64, max_height: f64 },

    /// Malformed zero-table line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Zero ordinates out of order.
    #[error("order error at line {line}: ordinates must be strictly increasing")]
    Order { line: usize },

    /// Zero file contained no ordinates.
    #[error("empty zero file")]
    EmptyFile,

    /// Lambda-table cache failed validation.
    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
