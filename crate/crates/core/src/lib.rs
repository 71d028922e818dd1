//! Exact algebra of symbols, formal sums and symbolic matrices.
//!
//! A [`FormalSum`] is a finite multiset of words over symbols. Products of
//! sums concatenate words, and [`FormalSum::fuse`] turns a length-2 word
//! `c d` into the single product symbol `(c.d)` so that matrices over a
//! product alphabet can be compared under a [`Specification`].

mod error;
mod matrix;
mod spec;
mod sum;
mod symbol;

pub use error::CoreError;
pub use matrix::SymbolicMatrix;
pub use spec::{find_specification, specified_equivalent, Mismatch, Specification};
pub use sum::FormalSum;
pub use symbol::{display_word, parse_symbol, Alphabet, Symbol, Word};

pub type Result<T> = std::result::Result<T, CoreError>;
