//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("parity-check matrix is rank deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("pattern budget {requested} exceeds the {available} nonempty patterns for length {n}")]
    BudgetTooLarge {
        requested: usize,
        available: u128,
        n: usize,
    },

    #[error("solution space too large: {free_vars} free variables exceed cap {cap}")]
    SolutionSpaceTooLarge { free_vars: usize, cap: u64 },

    #[error("NaN in LLR input at position {0}")]
    NanLlr(usize),

    #[error("quadrature did not converge: achieved tolerance {achieved:e}, requested {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
