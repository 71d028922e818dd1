//! K-groups of the algebras of a λ-graph bisystem, computed exactly on the
//! cylinder ladder of one side: `K₀` as the limit of `coker(ι_l − ρ_l)` and
//! `K₁` as the limit of `ker(ι_l − ρ_l)`.

mod error;
mod group;
mod kgroups;
mod ladder;
mod matrix;
mod smith;

pub use error::KTheoryError;
pub use group::FgAbelianGroup;
pub use kgroups::{ck_oracle, k_groups, k_groups_of_ladder, ConnectingMap, KLevel, KResult};
pub use ladder::{build_ladder, LevelLadder};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, Smith};

pub type Result<T> = std::result::Result<T, KTheoryError>;
