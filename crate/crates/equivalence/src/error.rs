use bisys_core::CoreError;
use bisys_smb::SmbError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("witness shape mismatch: {0}")]
    Shape(String),
    #[error("bisystem of depth {depth} is too shallow: {needed} levels needed")]
    TooShallow { depth: usize, needed: usize },
    #[error("specification is undefined on `{0}`")]
    Undefined(String),
    #[error("`{0}` is not a product symbol")]
    NotProduct(String),
    /// No symbol of `Σ_N` specifies to `d₁·c₂` for an admissible pair.
    #[error("no symbol specifies to `{target}` for the admissible pair `{pair}`")]
    Uncovered { pair: String, target: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Smb(#[from] SmbError),
    #[error(transparent)]
    Bisystem(#[from] bisys_bisystem::BisystemError),
}
