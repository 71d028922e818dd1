use bisys_bisystem::{BisystemError, Side};
use bisys_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmbError {
    #[error("a symbolic matrix bisystem needs at least one level of matrices")]
    DepthZero,
    #[error("{minus} minus matrices but {plus} plus matrices")]
    LevelCount { minus: usize, plus: usize },
    #[error("{side} matrix at level {level} is {found:?}, expected {expected:?}")]
    Shape { side: Side, level: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("{side} matrix at level {level}, cell ({row},{col}): term `{term}` is not a single symbol")]
    NotLinear { side: Side, level: usize, row: usize, col: usize, term: String },
    #[error("symbolic matrix must be square and non-empty")]
    NotSquare,
    #[error("cell ({row},{col}) must hold at most one symbol")]
    CellNotSimple { row: usize, col: usize },
    #[error("symbol `{0}` occurs in more than one cell")]
    DuplicateSymbol(String),
    #[error("row or column {0} of the matrix is zero")]
    ZeroLine(usize),
    #[error(transparent)]
    Bisystem(#[from] BisystemError),
    #[error(transparent)]
    Core(#[from] CoreError),
}
