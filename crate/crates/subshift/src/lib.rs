//! Presentations of subshifts and their languages.
//!
//! Every presentation is turned into a [`LabeledGraph`] in which each state
//! has an incoming and an outgoing edge, so that the labels of finite paths
//! are exactly the admissible words. Past and future state sets of rays
//! are computed exactly from the finite monoid of path relations.

mod block;
mod error;
mod graph;
mod presentation;
mod rays;
mod words;

pub use block::BlockMap;
pub use error::SubshiftError;
pub use graph::{GraphEdge, LabeledGraph, StateSet};
pub use presentation::{higher_block_recode, BlockRecoding, SftMatrix, SubshiftPresentation};
pub use rays::{ray_futures, ray_pasts, realizable_pairs};
pub use words::{admissible_words, fill_in_words, future_state_set, past_state_set};

pub type Result<T> = std::result::Result<T, SubshiftError>;
