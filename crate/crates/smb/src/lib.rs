//! Symbolic matrix bisystems `(M⁻_{l,l+1}, M⁺_{l,l+1})`.
//!
//! `M⁻_{l,l+1}` has shape `m(l) × m(l+1)` and entry `(i, j)` sums the labels
//! of minus edges from `v_j^{l+1}` down to `v_i^l`. `M⁺_{l,l+1}(i, j)` sums
//! the labels of plus edges from `v_i^l` to `v_j^{l+1}`.

mod convert;
mod error;
mod iso;
mod sft;
mod smb;
mod validate;

pub use convert::{from_smb, to_smb};
pub use error::SmbError;
pub use iso::{smb_isomorphic, SmbIsomorphism};
pub use sft::{sft_smb, SftAlphabets};
pub use smb::SymbolicMatrixBisystem;
pub use validate::{validate_smb, SmbAxiom, SmbValidationReport, SmbVerdict, SmbViolation};

pub type Result<T> = std::result::Result<T, SmbError>;
