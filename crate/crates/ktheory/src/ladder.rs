use std::collections::{BTreeMap, BTreeSet};

use bisys_bisystem::{LambdaGraphBisystem, Side};
use bisys_core::Word;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{IntMatrix, KTheoryError, Result};

/// Integer coordinates for the cylinder filtration of one side.
///
/// On the minus side level `l` has the basis `(i, ξ)`, `ξ ∈ F(v_i^l)`; on
/// the plus side `(i, μ)`, `μ ∈ P(v_i^l)`. `iota[l]` and `rho[l]` map level
/// `l` coordinates (columns) to level `l+1` coordinates (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLadder {
    pub side: Side,
    pub bases: Vec<Vec<(usize, Word)>>,
    pub iota: Vec<IntMatrix>,
    pub rho: Vec<IntMatrix>,
}

impl LevelLadder {
    pub fn depth(&self) -> usize {
        self.iota.len()
    }

    pub fn dimension(&self, l: usize) -> usize {
        self.bases[l].len()
    }

    /// `ι_l − ρ_l`, the level-`l` realization of `id − λ*`.
    pub fn difference(&self, l: usize) -> IntMatrix {
        self.iota[l].sub(&self.rho[l])
    }

    /// Every level-`l+1` basis element refines exactly one level-`l`
    /// element: each row of `ι_l` is a unit vector.
    pub fn iota_refines(&self) -> bool {
        self.iota.iter().all(|m| {
            (0..m.rows()).all(|r| {
                let row = m.row(r);
                row.iter().filter(|x| x.is_one()).count() == 1 && row.iter().all(|x| x.is_zero() || x.is_one())
            })
        })
    }
}

fn index(basis: &[(usize, Word)]) -> BTreeMap<(usize, Word), usize> {
    basis.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect()
}

fn bump(m: &mut IntMatrix, r: usize, c: usize) {
    m[(r, c)] += BigInt::one();
}

/// Builds the ladder of `b` on `side` up to level `depth`.
///
/// Minus side: `ι_l(i, ξ)` has `A⁻(i, β, j)` at `(j, βξ)` and `ρ_l(i, ξ)`
/// has `Σ_α A⁺(i, α, j)` at every `(j, ξβ)` with `ξβ ∈ F(v_j^{l+1})`. The
/// plus side swaps the roles: `ι_l(i, μ)` has `A⁺(i, α, j)` at `(j, μα)`
/// and `ρ_l(i, μ)` has `Σ_β A⁻(i, β, j)` at every `(j, αμ)` with
/// `αμ ∈ P(v_j^{l+1})`.
pub fn build_ladder(b: &LambdaGraphBisystem, side: Side, depth: usize) -> Result<LevelLadder> {
    if depth == 0 {
        return Err(KTheoryError::DepthZero);
    }
    if depth > b.depth() {
        return Err(KTheoryError::DepthExhausted { requested: depth, available: b.depth() });
    }
    let sets: Vec<Vec<BTreeSet<Word>>> = match side {
        Side::Minus => b.follower_sets(),
        Side::Plus => b.predecessor_sets(),
    };
    let bases: Vec<Vec<(usize, Word)>> = sets[..=depth]
        .iter()
        .map(|level| level.iter().enumerate().flat_map(|(i, ws)| ws.iter().map(move |w| (i, w.clone()))).collect())
        .collect();
    let mut iota = Vec::with_capacity(depth);
    let mut rho = Vec::with_capacity(depth);
    for l in 0..depth {
        let lower = index(&bases[l]);
        let upper = index(&bases[l + 1]);
        let mut i_m = IntMatrix::zero(upper.len(), lower.len());
        let mut r_m = IntMatrix::zero(upper.len(), lower.len());
        // Minus edges run v_j^{l+1} -> v_i^l, plus edges v_i^l -> v_j^{l+1}.
        let (refining, shifting) = match side {
            Side::Minus => (b.minus_edges(l), b.plus_edges(l)),
            Side::Plus => (b.plus_edges(l), b.minus_edges(l)),
        };
        for e in refining {
            let (i, j) = match side {
                Side::Minus => (e.target, e.source),
                Side::Plus => (e.source, e.target),
            };
            for w in &sets[l][i] {
                let mut longer = Vec::with_capacity(l + 1);
                match side {
                    Side::Minus => {
                        longer.push(e.label.clone());
                        longer.extend(w.iter().cloned());
                    }
                    Side::Plus => {
                        longer.extend(w.iter().cloned());
                        longer.push(e.label.clone());
                    }
                }
                bump(&mut i_m, upper[&(j, longer)], lower[&(i, w.clone())]);
            }
        }
        for e in shifting {
            let (i, j) = match side {
                Side::Minus => (e.source, e.target),
                Side::Plus => (e.target, e.source),
            };
            for w in &sets[l + 1][j] {
                let shorter: Word = match side {
                    Side::Minus => w[..l].to_vec(),
                    Side::Plus => w[1..].to_vec(),
                };
                if let Some(&c) = lower.get(&(i, shorter)) {
                    bump(&mut r_m, upper[&(j, w.clone())], c);
                }
            }
        }
        iota.push(i_m);
        rho.push(r_m);
    }
    Ok(LevelLadder { side, bases, iota, rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bisys_bisystem::{fixtures, from_lambda_graph_system, LambdaGraphSystem};

    #[test]
    fn import_collapses_to_vertices() {
        let a = vec![vec![1, 1], vec![1, 0]];
        let b = from_lambda_graph_system(&LambdaGraphSystem::from_matrix(&a, 3).unwrap()).unwrap();
        let ladder = build_ladder(&b, Side::Minus, 3).unwrap();
        let at = IntMatrix::from_rows(&a).transpose();
        for l in 0..3 {
            assert_eq!(ladder.dimension(l), 2);
            assert_eq!(ladder.iota[l], IntMatrix::identity(2));
            assert_eq!(ladder.rho[l], at);
        }
    }

    #[test]
    fn full_shift_doubles() {
        let ladder = build_ladder(&fixtures::full_shift(2, 4), Side::Minus, 4).unwrap();
        for l in 0..=4 {
            assert_eq!(ladder.dimension(l), 1 << l);
        }
        assert!(ladder.iota_refines());
    }

    #[test]
    fn depth_is_checked() {
        let b = fixtures::golden_mean(2);
        assert_eq!(build_ladder(&b, Side::Plus, 3), Err(KTheoryError::DepthExhausted { requested: 3, available: 2 }));
    }
}
