//! Finite truncations of λ-graph bisystems.
//!
//! A bisystem of depth `L` stores vertex levels `V_0..=V_L`, minus edges
//! from `V_{l+1}` down to `V_l` and plus edges from `V_l` to `V_{l+1}`.
//! Vertices are addressed by `(level, index)` with zero-based indices.

mod bisystem;
mod dot;
mod error;
pub mod fixtures;
mod lgs;
mod sigma;
mod tensor;
mod validate;
mod words;

pub use bisystem::{Edge, LambdaGraphBisystem, Side};
pub use dot::to_dot;
pub use error::BisystemError;
pub use lgs::{from_lambda_graph_system, LambdaGraphSystem, LgsViolation};
pub use sigma::{sigma_condition_i_witness, SigmaChoice, SigmaOutcome, SigmaWitness};
pub use tensor::{LevelTensor, TransitionMatrices};
pub use validate::{fpcc_check, validate, Axiom, Direction, Fpcc, ValidationReport, Verdict, Violation};
pub use words::presented_words;

pub type Result<T> = std::result::Result<T, BisystemError>;

/// Display name of a vertex, one-based as in the usual `v_i^l` notation.
pub fn vertex_name(level: usize, index: usize) -> String {
    format!("v{}^{}", index + 1, level)
}
