use bisys_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubshiftError {
    #[error("state {state} has no {missing} edge")]
    NotEssential { state: usize, missing: &'static str },
    #[error("edge endpoint {0} out of range")]
    StateOutOfRange(usize),
    #[error("matrix is not square or its size does not match the symbol list")]
    Shape,
    #[error("matrix entry ({0},{1}) is not 0 or 1")]
    NotZeroOne(usize, usize),
    #[error("matrix has a zero {kind} at index {index}")]
    ZeroLine { kind: &'static str, index: usize },
    #[error("word `{0}` is not admissible")]
    NotAdmissible(String),
    #[error("every word is eventually forbidden; the language is empty")]
    EmptyLanguage,
    #[error("forbidden word `{0}` is shorter than 2")]
    ForbiddenTooShort(String),
    #[error("forbidden word `{0}` uses a symbol outside the alphabet")]
    ForeignSymbol(String),
    #[error("block code undefined on pair ({0}, {1})")]
    UndefinedCode(String, String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
