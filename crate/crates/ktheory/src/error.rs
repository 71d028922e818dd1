use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("ladder of depth {requested} requested but the bisystem has depth {available}")]
    DepthExhausted { requested: usize, available: usize },
    #[error("a ladder needs at least one level step")]
    DepthZero,
    #[error("matrix must be square: {0}")]
    NotSquare(String),
}
