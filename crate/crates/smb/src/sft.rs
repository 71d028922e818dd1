use std::collections::BTreeSet;

use bisys_core::{FormalSum, Symbol, SymbolicMatrix};

use crate::{Result, SmbError, SymbolicMatrixBisystem};

/// Symbol naming for [`sft_smb`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SftAlphabets {
    /// `α⁻` on the minus side and `α⁺` on the plus side.
    Signed,
    /// Both sides use the symbols of `A` itself.
    Common,
}

fn signed(s: &Symbol, mark: &str) -> Symbol {
    match s {
        Symbol::Atom(name) => Symbol::atom(&format!("{name}{mark}")),
        Symbol::Pair(c, d) => Symbol::pair(signed(c, mark), signed(d, mark)),
    }
}

/// The bisystem of the edge shift of `A` on vertex pairs `(r, k)`.
///
/// Level 0 is a single vertex joined to `(r, k)` by `A(r, k)` on both
/// sides. Between deeper levels `M⁻((r, k), (c, k)) = A(c, r)` and
/// `M⁺((r, k), (r, k')) = A(k, k')`. When every cell of `A` is non-zero this
/// is `M_A⁻`, `M_A⁺` on all `N²` pairs; otherwise a pair `(r, k)` is kept at
/// level `l` only when `A` has a path of length `l` from `r` to `k`, since the
/// others would give zero rows and columns.
pub fn sft_smb(a: &SymbolicMatrix, depth: usize, alphabets: SftAlphabets) -> Result<SymbolicMatrixBisystem> {
    let n = a.rows();
    if n == 0 || a.cols() != n {
        return Err(SmbError::NotSquare);
    }
    if depth == 0 {
        return Err(SmbError::DepthZero);
    }
    let mut seen = BTreeSet::new();
    let mut cell: Vec<Vec<Option<Symbol>>> = vec![vec![None; n]; n];
    for (i, j, x) in a.entries() {
        match x.terms() {
            [] => {}
            [w] if w.len() == 1 => {
                if !seen.insert(w[0].clone()) {
                    return Err(SmbError::DuplicateSymbol(w[0].to_string()));
                }
                cell[i][j] = Some(w[0].clone());
            }
            _ => return Err(SmbError::CellNotSimple { row: i, col: j }),
        }
    }
    for k in 0..n {
        if (0..n).all(|j| cell[k][j].is_none()) || (0..n).all(|i| cell[i][k].is_none()) {
            return Err(SmbError::ZeroLine(k));
        }
    }
    let (minus_mark, plus_mark) = match alphabets {
        SftAlphabets::Signed => ("⁻", "⁺"),
        SftAlphabets::Common => ("", ""),
    };
    let sym = |s: &Symbol, mark: &str| FormalSum::symbol(if mark.is_empty() { s.clone() } else { signed(s, mark) });

    // reach[r][k]: a path of the current length runs from r to k.
    let mut reach: Vec<Vec<bool>> = (0..n).map(|r| (0..n).map(|k| cell[r][k].is_some()).collect()).collect();
    let mut levels: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for _ in 1..=depth {
        levels.push((0..n).flat_map(|r| (0..n).map(move |k| (r, k))).filter(|&(r, k)| reach[r][k]).collect());
        reach = (0..n).map(|r| (0..n).map(|k| (0..n).any(|j| reach[r][j] && cell[j][k].is_some())).collect()).collect();
    }

    let mut minus = Vec::new();
    let mut plus = Vec::new();
    let top = &levels[1];
    let mut m0 = SymbolicMatrix::zero(1, top.len());
    let mut p0 = SymbolicMatrix::zero(1, top.len());
    for (j, &(r, k)) in top.iter().enumerate() {
        let s = cell[r][k].as_ref().expect("level-1 pairs are edges");
        m0.set(0, j, sym(s, minus_mark));
        p0.set(0, j, sym(s, plus_mark));
    }
    minus.push(m0);
    plus.push(p0);
    for l in 1..depth {
        let (rows, cols) = (&levels[l], &levels[l + 1]);
        let mut m = SymbolicMatrix::zero(rows.len(), cols.len());
        let mut p = SymbolicMatrix::zero(rows.len(), cols.len());
        for (i, &(r, k)) in rows.iter().enumerate() {
            for (j, &(c, k2)) in cols.iter().enumerate() {
                if k == k2 {
                    if let Some(s) = &cell[c][r] {
                        m.set(i, j, sym(s, minus_mark));
                    }
                }
                if r == c {
                    if let Some(s) = &cell[k][k2] {
                        p.set(i, j, sym(s, plus_mark));
                    }
                }
            }
        }
        minus.push(m);
        plus.push(p);
    }
    SymbolicMatrixBisystem::new(minus, plus)
}
