use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("components must have at least one cell")]
    EmptyComponent,
    #[error("cell {cell} is outside 1..={len}")]
    CellOutOfRange { cell: u32, len: u32 },
    #[error("component index {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("position is terminal")]
    TerminalPosition,
    #[error("cell {0} is not empty")]
    Occupied(usize),
    #[error("board cell {index} out of range (board has {size} cells)")]
    BoardIndexOutOfRange { index: usize, size: usize },
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes and {elapsed_secs:.1}s")]
    BudgetExhausted { nodes: u64, elapsed_secs: f64 },
    #[error("board of {size} cells exceeds the oracle cap of {cap}")]
    OracleCapExceeded { size: usize, cap: usize },
    #[error("strategy `{strategy}` returned an illegal move: {detail}")]
    StrategyNotTotal { strategy: String, detail: String },
    #[error(transparent)]
    Board(#[from] BoardError),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache format version mismatch: expected {expected}, found {found:?}")]
    VersionMismatch { expected: u8, found: Option<u8> },
    #[error("cache checksum mismatch")]
    Checksum,
    #[error("corrupt cache: {0}")]
    Corrupt(String),
}
