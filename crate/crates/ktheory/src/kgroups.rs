use std::fmt;

use bisys_bisystem::{LambdaGraphBisystem, Side};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::{build_ladder, smith_normal_form, FgAbelianGroup, IntMatrix, KTheoryError, LevelLadder, Result, Smith};

/// Status of the map from one approximant to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingMap {
    /// `ι` sends the relations (or the kernel) of this level into those of
    /// the next.
    pub well_defined: bool,
    pub isomorphism: bool,
}

/// The approximants `coker(ι_l − ρ_l)` and `ker(ι_l − ρ_l)` at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLevel {
    pub level: usize,
    pub dimension: usize,
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    /// Maps to level `level + 1`, absent at the top level.
    pub k0_map: Option<ConnectingMap>,
    pub k1_map: Option<ConnectingMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KResult {
    pub side: Side,
    pub levels: Vec<KLevel>,
    /// Three or more final approximants agree and are joined by
    /// isomorphisms.
    pub stabilized: bool,
    pub stable_from: Option<usize>,
}

impl KResult {
    /// The top approximant of `K₀`.
    pub fn k0(&self) -> &FgAbelianGroup {
        &self.levels.last().expect("at least one level").k0
    }

    pub fn k1(&self) -> &FgAbelianGroup {
        &self.levels.last().expect("at least one level").k1
    }
}

impl fmt::Display for KResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Minus => "minus",
            Side::Plus => "plus",
        };
        writeln!(f, "side {side}")?;
        writeln!(f, "level\tdim\tK0\tK1")?;
        for lv in &self.levels {
            writeln!(f, "{}\t{}\t{}\t{}", lv.level, lv.dimension, lv.k0, lv.k1)?;
        }
        match self.stable_from {
            Some(s) => write!(f, "stabilized from level {s}: K0 = {}, K1 = {}", self.k0(), self.k1()),
            None => write!(f, "not stabilized"),
        }
    }
}

fn all_units(s: &Smith) -> bool {
    s.invariant_factors().iter().all(One::is_one)
}

fn cokernel_map(
    iota_next: &IntMatrix,
    f: &IntMatrix,
    f_next: &Smith,
    f_next_m: &IntMatrix,
    same: bool,
) -> ConnectingMap {
    let pushed = iota_next.mul(f);
    let well_defined = (0..pushed.cols()).all(|c| f_next.spans(&pushed.column(c)));
    // A surjection between isomorphic finitely generated groups is an
    // isomorphism; surjective means `[ι | f_{l+1}]` spans `Z^{d(l+2)}`.
    let isomorphism = well_defined && same && {
        let s = smith_normal_form(&iota_next.hconcat(f_next_m));
        s.rank == iota_next.rows() && all_units(&s)
    };
    ConnectingMap { well_defined, isomorphism }
}

fn kernel_map(iota: &IntMatrix, kernel: &[Vec<BigInt>], f_next: &IntMatrix, rank_next: usize) -> ConnectingMap {
    let image = IntMatrix::from_columns(iota.rows(), &kernel.iter().map(|k| iota.mul_vec(k)).collect::<Vec<_>>());
    let well_defined = f_next.mul(&image).is_zero();
    // The kernels are saturated; an injective image of full rank with unit
    // invariant factors is the whole target kernel.
    let isomorphism = well_defined && kernel.len() == rank_next && {
        let s = smith_normal_form(&image);
        s.rank == kernel.len() && all_units(&s)
    };
    ConnectingMap { well_defined, isomorphism }
}

/// Approximants of `K₀` and `K₁` from a ladder, with stabilization assessed
/// on the last three levels.
pub fn k_groups_of_ladder(ladder: &LevelLadder) -> KResult {
    let depth = ladder.depth();
    let diffs: Vec<IntMatrix> = (0..depth).map(|l| ladder.difference(l)).collect();
    let snfs: Vec<Smith> = diffs.iter().map(smith_normal_form).collect();
    let mut levels = Vec::with_capacity(depth);
    for l in 0..depth {
        let s = &snfs[l];
        let k0 = FgAbelianGroup {
            free_rank: diffs[l].rows() - s.rank,
            torsion: s.invariant_factors().into_iter().filter(|d| !d.is_one()).collect(),
        };
        let k1 = FgAbelianGroup::free(diffs[l].cols() - s.rank);
        levels.push(KLevel { level: l, dimension: ladder.dimension(l), k0, k1, k0_map: None, k1_map: None });
    }
    for l in 0..depth.saturating_sub(1) {
        let same0 = levels[l].k0 == levels[l + 1].k0;
        let kernel = snfs[l].kernel_basis();
        let rank_next = levels[l + 1].k1.free_rank;
        levels[l].k0_map = Some(cokernel_map(&ladder.iota[l + 1], &diffs[l], &snfs[l + 1], &diffs[l + 1], same0));
        levels[l].k1_map = Some(kernel_map(&ladder.iota[l], &kernel, &diffs[l + 1], rank_next));
    }
    let joined = |l: usize| {
        let lv = &levels[l];
        lv.k0_map.is_some_and(|m| m.isomorphism) && lv.k1_map.is_some_and(|m| m.isomorphism)
    };
    let mut start = depth.saturating_sub(1);
    while start > 0 && joined(start - 1) {
        start -= 1;
    }
    let stable_from = (depth >= 3 && depth - start >= 3).then_some(start);
    KResult { side: ladder.side, levels, stabilized: stable_from.is_some(), stable_from }
}

/// `K₀` and `K₁` approximants of `b` on `side` to level `depth`.
pub fn k_groups(b: &LambdaGraphBisystem, side: Side, depth: usize) -> Result<KResult> {
    Ok(k_groups_of_ladder(&build_ladder(b, side, depth)?))
}

/// `(coker(I − Aᵗ), ker(I − Aᵗ))` for a nonnegative integer matrix `A`.
pub fn ck_oracle(a: &[Vec<u32>]) -> Result<(FgAbelianGroup, FgAbelianGroup)> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(KTheoryError::NotSquare(format!(
            "{n} rows of lengths {:?}",
            a.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    let m = IntMatrix::identity(n).sub(&IntMatrix::from_rows(a).transpose());
    Ok((FgAbelianGroup::cokernel(&m), FgAbelianGroup::kernel(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bisys_bisystem::{from_lambda_graph_system, LambdaGraphSystem};

    fn import(a: &[Vec<u32>], depth: usize) -> LambdaGraphBisystem {
        from_lambda_graph_system(&LambdaGraphSystem::from_matrix(a, depth).unwrap()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(ck_oracle(&[vec![2]]).unwrap(), (FgAbelianGroup::trivial(), FgAbelianGroup::trivial()));
        let (k0, k1) = ck_oracle(&[vec![3]]).unwrap();
        assert_eq!((k0.to_string(), k1.to_string()), ("Z/2Z".into(), "0".into()));
        assert_eq!(
            ck_oracle(&[vec![1, 1], vec![1, 0]]).unwrap(),
            (FgAbelianGroup::trivial(), FgAbelianGroup::trivial())
        );
        assert!(ck_oracle(&[vec![1, 1]]).is_err());
    }

    #[test]
    fn full_three_shift_import() {
        let r = k_groups(&import(&[vec![3]], 5), Side::Minus, 5).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.stable_from, Some(0));
        assert_eq!(r.k0().to_string(), "Z/2Z");
        assert!(r.k1().is_trivial());
    }

    #[test]
    fn too_short_to_stabilize() {
        let r = k_groups(&import(&[vec![2]], 2), Side::Minus, 2).unwrap();
        assert!(!r.stabilized);
        assert!(r.to_string().ends_with("not stabilized"));
    }
}
