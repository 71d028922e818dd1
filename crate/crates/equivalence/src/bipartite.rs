use std::collections::BTreeSet;

use bisys_core::{Specification, Symbol, SymbolicMatrix};
use bisys_smb::SymbolicMatrixBisystem;
use serde::{Deserialize, Serialize};

use crate::witness::{all_symbols, fused_product};
use crate::{EquivalenceError, PsseWitness, Result};

/// A splitting `Σ = C ⊔ D`, `V_l = V_l^C ⊔ V_l^D` under which
/// `M⁺_{l,l+1} = [[0, P], [Q, 0]]` and `M⁻_{l,l+1}` is block diagonal, with
/// `diag(Y, X)` for odd `l` and `diag(X, Y)` for even `l`. A standard root
/// `V_0` counts as both a `C` and a `D` vertex, giving the row form
/// `M⁺_{0,1} = [Q P]`, `M⁻_{0,1} = [X Y]` with the columns ordered `C`
/// before `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteStructure {
    pub c: BTreeSet<Symbol>,
    pub d: BTreeSet<Symbol>,
    /// Indices of `V_l^C` and `V_l^D` in `V_l`, for `l = 0..=L`.
    pub vertices_c: Vec<Vec<usize>>,
    pub vertices_d: Vec<Vec<usize>>,
    /// Blocks of `M^±_{l,l+1}` for `l = 0..L`.
    pub p: Vec<SymbolicMatrix>,
    pub q: Vec<SymbolicMatrix>,
    pub x: Vec<SymbolicMatrix>,
    pub y: Vec<SymbolicMatrix>,
}

/// Union-find with parities: `colour(v) = colour(root) ⊕ parity(v)`.
struct Parity {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, up) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= up;
        (root, self.parity[v])
    }

    /// Records `colour(a) ⊕ colour(b) = differ`; false on a contradiction.
    fn relate(&mut self, a: usize, b: usize, differ: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == differ;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ differ;
        true
    }
}

/// Finds the bipartite structure of `s`, if any.
///
/// Colour `C` is `false`. Every plus edge `u -α-> v` forces
/// `colour(u) = colour(α) ≠ colour(v)`; a minus edge from `v ∈ V_{l+1}` to
/// `u ∈ V_l` forces `colour(u) = colour(v)`, equal to `colour(β)` for odd `l`
/// and opposite to it for even `l`. The constraints are parity equations,
/// solved exactly. Each free component is coloured so that its least symbol
/// lands in `C`.
pub fn detect_bipartite(s: &SymbolicMatrixBisystem) -> Option<BipartiteStructure> {
    let sizes = s.level_sizes().ok()?;
    let symbols: Vec<Symbol> = all_symbols(s).into_iter().collect();
    let ns = symbols.len();
    let mut offset = vec![ns];
    for &m in &sizes {
        offset.push(offset.last().unwrap() + m);
    }
    let standard = sizes[0] == 1;
    let vertex = |l: usize, i: usize| offset[l] + i;
    let sym = |a: &Symbol| symbols.binary_search(a).expect("symbol of s");
    let mut uf = Parity::new(*offset.last().unwrap());

    for l in 0..s.depth() {
        for (i, j, cell) in s.plus(l).entries() {
            for w in cell.terms() {
                let [a] = w.as_slice() else { return None };
                if !(l == 0 && standard) && !uf.relate(vertex(l, i), sym(a), false) {
                    return None;
                }
                if !uf.relate(vertex(l + 1, j), sym(a), true) {
                    return None;
                }
            }
        }
        for (i, j, cell) in s.minus(l).entries() {
            for w in cell.terms() {
                let [b] = w.as_slice() else { return None };
                let differ = l % 2 == 0;
                if !(l == 0 && standard) && !uf.relate(vertex(l, i), sym(b), differ) {
                    return None;
                }
                if !uf.relate(vertex(l + 1, j), sym(b), differ) {
                    return None;
                }
            }
        }
    }

    // Root colours: the first symbol met in a component decides.
    let total = *offset.last().unwrap();
    let mut root_colour: Vec<Option<bool>> = vec![None; total];
    for v in 0..total {
        let (root, parity) = uf.find(v);
        if root_colour[root].is_none() {
            root_colour[root] = Some(parity);
        }
    }
    let mut colour = |v: usize| {
        let (root, parity) = uf.find(v);
        root_colour[root].expect("assigned") ^ parity
    };
    let mut c = BTreeSet::new();
    let mut d = BTreeSet::new();
    for (k, a) in symbols.iter().enumerate() {
        if colour(k) {
            d.insert(a.clone());
        } else {
            c.insert(a.clone());
        }
    }
    if c.is_empty() || d.is_empty() {
        return None;
    }
    let mut vertices_c = Vec::new();
    let mut vertices_d = Vec::new();
    for (l, &m) in sizes.iter().enumerate() {
        if l == 0 && standard {
            vertices_c.push(vec![0]);
            vertices_d.push(vec![0]);
            continue;
        }
        let (dv, cv): (Vec<usize>, Vec<usize>) = (0..m).partition(|&i| colour(vertex(l, i)));
        vertices_c.push(cv);
        vertices_d.push(dv);
    }
    let (mut p, mut q, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for l in 0..s.depth() {
        let (c0, d0, c1, d1) = (&vertices_c[l], &vertices_d[l], &vertices_c[l + 1], &vertices_d[l + 1]);
        p.push(s.plus(l).select(c0, d1));
        q.push(s.plus(l).select(d0, c1));
        let cc = s.minus(l).select(c0, c1);
        let dd = s.minus(l).select(d0, d1);
        if l % 2 == 0 {
            x.push(cc);
            y.push(dd);
        } else {
            y.push(cc);
            x.push(dd);
        }
    }
    Some(BipartiteStructure { c, d, vertices_c, vertices_d, p, q, x, y })
}

/// The two bisystems of a bipartite bisystem and the witness between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteSplit {
    pub cd: SymbolicMatrixBisystem,
    pub dc: SymbolicMatrixBisystem,
    pub witness: PsseWitness,
}

/// `M^{CD+}_l = P_{2l}Q_{2l+1}`, `M^{CD-}_l = κ(X_{2l}Y_{2l+1})`,
/// `M^{DC+}_l = Q_{2l}P_{2l+1}` and `M^{DC-}_l = κ(Y_{2l}X_{2l+1})`, over
/// the product alphabets `C·D` and `D·C`. The witness uses the blocks
/// themselves and identity specifications. A bisystem of depth `L` splits
/// into two of depth `⌊L/2⌋`.
pub fn bipartite_split(s: &SymbolicMatrixBisystem, bip: &BipartiteStructure) -> Result<BipartiteSplit> {
    let depth = s.depth() / 2;
    if depth == 0 {
        return Err(EquivalenceError::TooShallow { depth: s.depth(), needed: 2 });
    }
    let (p, q, x, y) = (&bip.p, &bip.q, &bip.x, &bip.y);
    let (mut cd_minus, mut cd_plus, mut dc_minus, mut dc_plus) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for l in 0..depth {
        let (e, o) = (2 * l, 2 * l + 1);
        cd_plus.push(fused_product(&p[e], &q[o])?);
        cd_minus.push(fused_product(&x[e], &y[o])?.kappa()?);
        dc_plus.push(fused_product(&q[e], &p[o])?);
        dc_minus.push(fused_product(&y[e], &x[o])?.kappa()?);
    }
    let cd = SymbolicMatrixBisystem::new(cd_minus, cd_plus)?;
    let dc = SymbolicMatrixBisystem::new(dc_minus, dc_plus)?;
    let top = 2 * depth;
    let witness = PsseWitness {
        c: bip.c.clone(),
        d: bip.d.clone(),
        phi_m: Specification::identity(all_symbols(&cd)),
        phi_n: Specification::identity(all_symbols(&dc)),
        p: p[..top].to_vec(),
        q: q[..top].to_vec(),
        x: x[..top].to_vec(),
        y: y[..top].to_vec(),
    };
    Ok(BipartiteSplit { cd, dc, witness })
}
