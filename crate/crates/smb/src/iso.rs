//! Isomorphism of symbolic matrix bisystems: permutations `P_l` and one
//! specification `φ` with `P_l M^± ≃φ N^± P_{l+1}` at every level.

use std::collections::{BTreeMap, BTreeSet};

use bisys_bisystem::Side;
use bisys_core::{find_specification, specified_equivalent, FormalSum, Specification, Symbol, SymbolicMatrix};

use crate::SymbolicMatrixBisystem;

/// `permutations[l][i]` is the index in the second bisystem of vertex `i`
/// at level `l` of the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmbIsomorphism {
    pub permutations: Vec<Vec<usize>>,
    pub specification: Specification,
}

impl SmbIsomorphism {
    pub fn identity(s: &SymbolicMatrixBisystem) -> Option<SmbIsomorphism> {
        let sizes = s.level_sizes().ok()?;
        let symbols = s.symbols(Side::Minus).into_iter().chain(s.symbols(Side::Plus));
        Some(SmbIsomorphism {
            permutations: sizes.iter().map(|&m| (0..m).collect()).collect(),
            specification: Specification::identity(symbols.collect::<BTreeSet<_>>()),
        })
    }

    pub fn inverse(&self) -> SmbIsomorphism {
        let permutations = self
            .permutations
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        SmbIsomorphism { permutations, specification: self.specification.inverse() }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SmbIsomorphism) -> SmbIsomorphism {
        let permutations =
            self.permutations.iter().zip(&next.permutations).map(|(p, q)| p.iter().map(|&j| q[j]).collect()).collect();
        SmbIsomorphism { permutations, specification: self.specification.then(&next.specification) }
    }

    /// Checks both intertwinings at every level.
    pub fn verify(&self, s: &SymbolicMatrixBisystem, t: &SymbolicMatrixBisystem) -> bool {
        let (Ok(ms), Ok(ns)) = (s.level_sizes(), t.level_sizes()) else { return false };
        if ms != ns || self.permutations.len() != ms.len() {
            return false;
        }
        (0..s.depth()).all(|l| {
            [Side::Minus, Side::Plus].iter().all(|&side| {
                let permuted = permute(s.matrix(side, l), &self.permutations[l], &self.permutations[l + 1]);
                specified_equivalent(&permuted, t.matrix(side, l), &self.specification).is_ok()
            })
        })
    }
}

fn permute(m: &SymbolicMatrix, rows: &[usize], cols: &[usize]) -> SymbolicMatrix {
    let mut out = SymbolicMatrix::zero(m.rows(), m.cols());
    for (i, j, x) in m.entries() {
        out.set(rows[i], cols[j], x.clone());
    }
    out
}

/// Searches for an isomorphism. Vertices are first split by iterated
/// neighbourhood colours, then matched level by level with a partial
/// specification read off single-symbol cells; the final specification is
/// found on the whole permuted family and verified.
pub fn smb_isomorphic(s: &SymbolicMatrixBisystem, t: &SymbolicMatrixBisystem) -> Option<SmbIsomorphism> {
    let sizes = s.level_sizes().ok()?;
    if t.level_sizes().ok()? != sizes {
        return None;
    }
    let (cs, ct) = colours(s, t, &sizes);
    for l in 0..sizes.len() {
        let mut a = cs[l].clone();
        let mut b = ct[l].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let order: Vec<(usize, usize)> = sizes.iter().enumerate().flat_map(|(l, &m)| (0..m).map(move |i| (l, i))).collect();
    let mut search = Search {
        s,
        t,
        cs: &cs,
        ct: &ct,
        perm: sizes.iter().map(|&m| vec![usize::MAX; m]).collect(),
        used: sizes.iter().map(|&m| vec![false; m]).collect(),
        forward: BTreeMap::new(),
        backward: BTreeMap::new(),
        budget: 2_000_000,
    };
    search.run(&order, 0)
}

type Colour = usize;
/// Entries `(side and direction tag, neighbour colour, cell size)`.
type Signature = Vec<(u8, Colour, usize)>;

fn colours(
    s: &SymbolicMatrixBisystem,
    t: &SymbolicMatrixBisystem,
    sizes: &[usize],
) -> (Vec<Vec<Colour>>, Vec<Vec<Colour>>) {
    let init = || -> Vec<Vec<Colour>> { sizes.iter().enumerate().map(|(l, &m)| (0..m).map(|_| l).collect()).collect() };
    let mut c = [init(), init()];
    let mut classes = sizes.len();
    for _ in 0..=sizes.len() + 2 {
        let mut intern: BTreeMap<(Colour, Signature), Colour> = BTreeMap::new();
        let mut next = [Vec::new(), Vec::new()];
        for (k, x) in [s, t].into_iter().enumerate() {
            let sigs: Vec<Vec<(Colour, Signature)>> = (0..sizes.len())
                .map(|l| (0..sizes[l]).map(|i| (c[k][l][i], signature(x, &c[k], l, i))).collect())
                .collect();
            next[k] = sigs
                .into_iter()
                .map(|level| {
                    level
                        .into_iter()
                        .map(|sig| {
                            let n = intern.len();
                            *intern.entry(sig).or_insert(n)
                        })
                        .collect()
                })
                .collect();
        }
        let stable = intern.len() == classes;
        classes = intern.len();
        c = next;
        if stable {
            break;
        }
    }
    let [a, b] = c;
    (a, b)
}

/// Neighbour colours with cell sizes, by side and direction.
fn signature(x: &SymbolicMatrixBisystem, c: &[Vec<Colour>], l: usize, i: usize) -> Signature {
    let mut sig = Vec::new();
    for (tag, side) in [(0u8, Side::Minus), (2, Side::Plus)] {
        if l < x.depth() {
            for (j, cell) in x.matrix(side, l).row(i).iter().enumerate() {
                if !cell.is_zero() {
                    sig.push((tag, c[l + 1][j], cell.len()));
                }
            }
        }
        if l > 0 {
            let m = x.matrix(side, l - 1);
            for j in 0..m.rows() {
                let cell = m.get(j, i);
                if !cell.is_zero() {
                    sig.push((tag + 1, c[l - 1][j], cell.len()));
                }
            }
        }
    }
    sig.sort_unstable();
    sig
}

struct Search<'a> {
    s: &'a SymbolicMatrixBisystem,
    t: &'a SymbolicMatrixBisystem,
    cs: &'a [Vec<Colour>],
    ct: &'a [Vec<Colour>],
    perm: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    forward: BTreeMap<Symbol, Symbol>,
    backward: BTreeMap<Symbol, Symbol>,
    budget: usize,
}

impl Search<'_> {
    fn run(&mut self, order: &[(usize, usize)], k: usize) -> Option<SmbIsomorphism> {
        if k == order.len() {
            return self.finish();
        }
        let (l, i) = order[k];
        for j in 0..self.perm[l].len() {
            if self.used[l][j] || self.cs[l][i] != self.ct[l][j] || self.budget == 0 {
                continue;
            }
            self.budget -= 1;
            let Some(added) = self.try_assign(l, i, j) else { continue };
            self.perm[l][i] = j;
            self.used[l][j] = true;
            if let Some(iso) = self.run(order, k + 1) {
                return Some(iso);
            }
            self.perm[l][i] = usize::MAX;
            self.used[l][j] = false;
            for x in added {
                let y = self.forward.remove(&x).expect("added");
                self.backward.remove(&y);
            }
        }
        None
    }

    /// Compares the cells between `(l, i) ↦ (l, j)` and every placed vertex
    /// of level `l - 1`, extending the partial specification. Returns the
    /// newly mapped symbols, or `None` on a conflict (leaving no trace).
    fn try_assign(&mut self, l: usize, i: usize, j: usize) -> Option<Vec<Symbol>> {
        let mut added = Vec::new();
        if l > 0 {
            for side in [Side::Minus, Side::Plus] {
                let (a, b) = (self.s.matrix(side, l - 1), self.t.matrix(side, l - 1));
                for u in 0..a.rows() {
                    let ok = self.match_cells(a.get(u, i), b.get(self.perm[l - 1][u], j), &mut added);
                    if !ok {
                        for x in added {
                            let y = self.forward.remove(&x).expect("added");
                            self.backward.remove(&y);
                        }
                        return None;
                    }
                }
            }
        }
        Some(added)
    }

    fn match_cells(&mut self, x: &FormalSum, y: &FormalSum, added: &mut Vec<Symbol>) -> bool {
        if x.len() != y.len() {
            return false;
        }
        if let ([p], [q]) = (x.terms(), y.terms()) {
            if let ([a], [b]) = (p.as_slice(), q.as_slice()) {
                return match (self.forward.get(a), self.backward.get(b)) {
                    (Some(fa), _) => fa == b,
                    (None, Some(_)) => false,
                    (None, None) => {
                        self.forward.insert(a.clone(), b.clone());
                        self.backward.insert(b.clone(), a.clone());
                        added.push(a.clone());
                        true
                    }
                };
            }
        }
        let target = y.symbols();
        let source = x.symbols();
        source.iter().all(|a| self.forward.get(a).is_none_or(|b| target.contains(b)))
            && target.iter().all(|b| self.backward.get(b).is_none_or(|a| source.contains(a)))
    }

    fn finish(&self) -> Option<SmbIsomorphism> {
        let stack = |x: &SymbolicMatrixBisystem, perm: Option<&[Vec<usize>]>| -> SymbolicMatrix {
            let blocks: Vec<SymbolicMatrix> = (0..x.depth())
                .flat_map(|l| [Side::Minus, Side::Plus].map(|side| (l, side)))
                .map(|(l, side)| match perm {
                    Some(p) => permute(x.matrix(side, l), &p[l], &p[l + 1]),
                    None => x.matrix(side, l).clone(),
                })
                .collect();
            block_diagonal(&blocks)
        };
        let a = stack(self.s, Some(&self.perm));
        let b = stack(self.t, None);
        let spec = find_specification(&a, &b)?;
        let iso = SmbIsomorphism { permutations: self.perm.clone(), specification: spec };
        iso.verify(self.s, self.t).then_some(iso)
    }
}

fn block_diagonal(blocks: &[SymbolicMatrix]) -> SymbolicMatrix {
    let rows: usize = blocks.iter().map(SymbolicMatrix::rows).sum();
    let cols: usize = blocks.iter().map(SymbolicMatrix::cols).sum();
    let mut out = SymbolicMatrix::zero(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for (i, j, x) in b.entries() {
            out.set(r0 + i, c0 + j, x.clone());
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}
