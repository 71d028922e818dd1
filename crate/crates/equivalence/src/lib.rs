//! One-step properly strong and strong shift equivalence between symbolic
//! matrix bisystems.
//!
//! A properly strong witness between `(M⁻, M⁺)` and `(N⁻, N⁺)` consists of
//! alphabets `C`, `D`, specifications `φ_M: Σ_M → C·D`, `φ_N: Σ_N → D·C`
//! and matrix families `P_k` over `C`, `Q_k` over `D`, `X_k` over `D` and
//! `Y_k` over `C` for `k = 0..2L`. Product symbols `c·d` are represented by
//! pair symbols `(c.d)`. All checks run to a stated finite depth.

mod bipartite;
mod code;
mod error;
mod verify;
mod witness;

pub use bipartite::{bipartite_split, detect_bipartite, BipartiteSplit, BipartiteStructure};
pub use code::{check_code, conjugacy_block_map, CodeReport, CodeViolation, ConjugacyCode, Direction};
pub use error::EquivalenceError;
pub use verify::{verify_psse_1step, verify_sse_1step, Check, Equation, EquivalenceReport, Failure, Mode};
pub use witness::{psse_to_sse, trivial_psse_witness, PsseWitness, SseWitness};

pub type Result<T> = std::result::Result<T, EquivalenceError>;
