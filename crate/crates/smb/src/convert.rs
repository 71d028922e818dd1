use bisys_bisystem::{Edge, LambdaGraphBisystem, Side};
use bisys_core::{display_word, FormalSum, SymbolicMatrix};

use crate::{Result, SmbError, SymbolicMatrixBisystem};

/// The matrix presentation. Parallel edges with equal labels become
/// repeated terms, so every defect of `b` stays visible to
/// [`crate::validate_smb`].
pub fn to_smb(b: &LambdaGraphBisystem) -> SymbolicMatrixBisystem {
    let matrix = |side: Side, l: usize| {
        let mut m = SymbolicMatrix::zero(b.level_size(l), b.level_size(l + 1));
        for e in b.edges(side, l) {
            let (i, j) = match side {
                Side::Minus => (e.target, e.source),
                Side::Plus => (e.source, e.target),
            };
            m.get_mut(i, j).add_assign(&FormalSum::symbol(e.label.clone()));
        }
        m
    };
    let minus = (0..b.depth()).map(|l| matrix(Side::Minus, l)).collect();
    let plus = (0..b.depth()).map(|l| matrix(Side::Plus, l)).collect();
    SymbolicMatrixBisystem::new(minus, plus).expect("a bisystem has at least one level")
}

/// One edge per term. Fails when shapes do not chain or a term is not a
/// single symbol.
pub fn from_smb(s: &SymbolicMatrixBisystem) -> Result<LambdaGraphBisystem> {
    let sizes = s.level_sizes()?;
    let mut edges = [Vec::new(), Vec::new()];
    for (k, side) in [Side::Minus, Side::Plus].into_iter().enumerate() {
        for l in 0..s.depth() {
            let mut level = Vec::new();
            for (row, col, cell) in s.matrix(side, l).entries() {
                for w in cell.terms() {
                    let [x] = w.as_slice() else {
                        return Err(SmbError::NotLinear { side, level: l, row, col, term: display_word(w) });
                    };
                    let (source, target) = match side {
                        Side::Minus => (col, row),
                        Side::Plus => (row, col),
                    };
                    level.push(Edge { source, target, label: x.clone() });
                }
            }
            edges[k].push(level);
        }
    }
    let [minus, plus] = edges;
    Ok(LambdaGraphBisystem::new(sizes, minus, plus)?)
}
