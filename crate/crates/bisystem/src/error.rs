use bisys_core::CoreError;
use thiserror::Error;

use crate::{LgsViolation, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BisystemError {
    #[error("depth must be at least 1")]
    DepthZero,
    #[error("expected {expected} {what} levels, found {found}")]
    LevelCount { what: &'static str, expected: usize, found: usize },
    #[error("level {0} has no vertices")]
    EmptyLevel(usize),
    #[error("{side} edge {source_vertex} -> {target_vertex} labelled {label} at level {level} is out of range")]
    VertexOutOfRange { side: Side, level: usize, source_vertex: usize, target_vertex: usize, label: String },
    #[error("iota at level {level} maps vertex {vertex} to {image}, outside the level below")]
    IotaOutOfRange { level: usize, vertex: usize, image: usize },
    #[error("not a λ-graph system: {0}")]
    NotLambdaGraphSystem(LgsViolation),
    #[error("invalid query: {0}")]
    Query(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
