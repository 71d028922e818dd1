use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("term `{0}` does not factor as a product of two symbols")]
    NotFactorable(String),
    #[error("specification is not injective: {0} and {1} share an image")]
    NotInjective(String, String),
    #[error("specification undefined on symbol `{0}`")]
    Undefined(String),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

impl CoreError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        CoreError::Parse { input: input.to_string(), reason: reason.into() }
    }
}
