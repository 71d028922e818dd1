use std::collections::BTreeSet;

use bisys_bisystem::Side;
use bisys_core::{Specification, Symbol, SymbolicMatrix};
use bisys_smb::SymbolicMatrixBisystem;
use serde::{Deserialize, Serialize};

use crate::{EquivalenceError, Result};

/// Data of a 1-step properly strong shift equivalence. The families are
/// indexed `0..2L`; `X_k` is `c(k) × c(k+1)` and `Y_k` is `d(k) × d(k+1)`
/// for even `k`, and the other way round for odd `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsseWitness {
    pub c: BTreeSet<Symbol>,
    pub d: BTreeSet<Symbol>,
    pub phi_m: Specification,
    pub phi_n: Specification,
    pub p: Vec<SymbolicMatrix>,
    pub q: Vec<SymbolicMatrix>,
    pub x: Vec<SymbolicMatrix>,
    pub y: Vec<SymbolicMatrix>,
}

/// Data of a 1-step strong shift equivalence: `H_l` is `m(l) × n(l+1)` over
/// `C` and `K_l` is `n(l) × m(l+1)` over `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SseWitness {
    pub c: BTreeSet<Symbol>,
    pub d: BTreeSet<Symbol>,
    pub phi_1: Specification,
    pub phi_2: Specification,
    pub phi_c_plus: Specification,
    pub phi_c_minus: Specification,
    pub phi_d_plus: Specification,
    pub phi_d_minus: Specification,
    pub h: Vec<SymbolicMatrix>,
    pub k: Vec<SymbolicMatrix>,
}

impl PsseWitness {
    /// Number of levels `L` covered by the families.
    pub fn depth(&self) -> usize {
        [&self.p, &self.q, &self.x, &self.y].iter().map(|f| f.len()).min().unwrap_or(0) / 2
    }
}

impl SseWitness {
    pub fn depth(&self) -> usize {
        self.h.len().min(self.k.len())
    }
}

pub(crate) fn all_symbols(s: &SymbolicMatrixBisystem) -> BTreeSet<Symbol> {
    let mut out = s.symbols(Side::Minus);
    out.extend(s.symbols(Side::Plus));
    out
}

/// `name`, `name'`, `name''`, … whichever is first not in `taken`.
fn fresh(name: &str, taken: &BTreeSet<Symbol>) -> Symbol {
    let mut candidate = name.to_string();
    loop {
        let s = Symbol::atom(&candidate);
        if !taken.contains(&s) {
            return s;
        }
        candidate.push('\'');
    }
}

/// The self-equivalence with `C = Σ`, `D = {1}`, `φ_M(a) = a·1`,
/// `φ_N(a) = 1·a`, `P_{2l} = P_{2l+1} = M⁺_{l,l+1}`,
/// `Y_{2l} = Y_{2l+1} = M⁻_{l,l+1}` and identity matrices over `1` for `Q`
/// and `X`. If `1` is already a symbol of `S`, primes are appended.
pub fn trivial_psse_witness(s: &SymbolicMatrixBisystem) -> Result<PsseWitness> {
    let m = s.level_sizes()?;
    let sigma = all_symbols(s);
    let one = fresh("1", &sigma);
    let phi_m = Specification::new(sigma.iter().map(|a| (a.clone(), Symbol::pair(a.clone(), one.clone()))))?;
    let phi_n = Specification::new(sigma.iter().map(|a| (a.clone(), Symbol::pair(one.clone(), a.clone()))))?;
    let (mut p, mut q, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for l in 0..s.depth() {
        p.extend([s.plus(l).clone(), s.plus(l).clone()]);
        y.extend([s.minus(l).clone(), s.minus(l).clone()]);
        let pair = [SymbolicMatrix::identity(m[l], &one), SymbolicMatrix::identity(m[l + 1], &one)];
        q.extend(pair.clone());
        x.extend(pair);
    }
    Ok(PsseWitness { c: sigma, d: BTreeSet::from([one]), phi_m, phi_n, p, q, x, y })
}

pub(crate) fn fused_product(a: &SymbolicMatrix, b: &SymbolicMatrix) -> bisys_core::Result<SymbolicMatrix> {
    a.mul(b)?.fuse()
}

fn factors(s: &Symbol) -> Result<(Symbol, Symbol)> {
    s.factors().map(|(c, d)| (c.clone(), d.clone())).ok_or_else(|| EquivalenceError::NotProduct(s.to_string()))
}

fn factor_table(spec: &Specification) -> Result<Vec<(Symbol, Symbol, Symbol)>> {
    spec.iter()
        .map(|(a, img)| {
            let (u, v) = factors(img)?;
            Ok((a.clone(), u, v))
        })
        .collect()
}

/// `H_l = X_{2l}P_{2l+1}` and `K_l = Y_{2l}Q_{2l+1}`, fused to product
/// symbols, with the specifications obtained by pushing the exchanges of the
/// properly strong witness through the products. Each specification is
/// defined on every product symbol for which its target exists.
pub fn psse_to_sse(w: &PsseWitness) -> Result<SseWitness> {
    let depth = w.depth();
    if depth == 0 {
        return Err(EquivalenceError::Shape("witness families are empty".into()));
    }
    let mut h = Vec::with_capacity(depth);
    let mut k = Vec::with_capacity(depth);
    for l in 0..depth {
        h.push(fused_product(&w.x[2 * l], &w.p[2 * l + 1]).map_err(|e| shape_error("X", "P", l, e))?);
        k.push(fused_product(&w.y[2 * l], &w.q[2 * l + 1]).map_err(|e| shape_error("Y", "Q", l, e))?);
    }
    let c: BTreeSet<Symbol> = h.iter().flat_map(SymbolicMatrix::symbols).collect();
    let d: BTreeSet<Symbol> = k.iter().flat_map(SymbolicMatrix::symbols).collect();
    let h_parts = c.iter().map(|s| factors(s).map(|(x, p)| (s.clone(), x, p))).collect::<Result<Vec<_>>>()?;
    let k_parts = d.iter().map(|s| factors(s).map(|(y, q)| (s.clone(), y, q))).collect::<Result<Vec<_>>>()?;

    // φ_M(a) = c·d and φ_N(b) = d·c, listed as (symbol, first, second).
    let fm = factor_table(&w.phi_m)?;
    let fnn = factor_table(&w.phi_n)?;
    let m_inv = w.phi_m.inverse();
    let n_inv = w.phi_n.inverse();
    let pair = Symbol::pair;
    let pre_m = |u: &Symbol, v: &Symbol| m_inv.get(&pair(u.clone(), v.clone())).cloned();
    let pre_n = |u: &Symbol, v: &Symbol| n_inv.get(&pair(u.clone(), v.clone())).cloned();

    let mut phi_1 = Vec::new();
    for (b, yb, xb) in &fm {
        for (a, pa, qa) in &fm {
            phi_1.push((pair(b.clone(), a.clone()), pair(pair(xb.clone(), pa.clone()), pair(yb.clone(), qa.clone()))));
        }
    }
    let mut phi_2 = Vec::new();
    for (b, xb, yb) in &fnn {
        for (a, qa, pa) in &fnn {
            phi_2.push((pair(b.clone(), a.clone()), pair(pair(yb.clone(), qa.clone()), pair(xb.clone(), pa.clone()))));
        }
    }
    let mut phi_c_plus = Vec::new();
    let mut phi_c_minus = Vec::new();
    for (a, u, v) in &fm {
        for (hs, x2, p2) in &h_parts {
            // Plus: u = p, v = q; p q x₂ p₂ becomes x₂ p · q p₂.
            if let Some(n) = pre_n(v, p2) {
                phi_c_plus.push((pair(a.clone(), hs.clone()), pair(pair(x2.clone(), u.clone()), n)));
            }
            // Minus: u = y, v = x; x y x₂ p₂ becomes x p₂ · y x₂.
            if let Some(n) = pre_n(x2, u) {
                phi_c_minus.push((pair(a.clone(), hs.clone()), pair(pair(v.clone(), p2.clone()), n)));
            }
        }
    }
    let mut phi_d_plus = Vec::new();
    let mut phi_d_minus = Vec::new();
    for (b, u, v) in &fnn {
        for (ks, y2, q2) in &k_parts {
            // Plus: u = q, v = p; q p y₂ q₂ becomes y₂ q · p q₂.
            if let Some(m) = pre_m(v, q2) {
                phi_d_plus.push((pair(b.clone(), ks.clone()), pair(pair(y2.clone(), u.clone()), m)));
            }
            // Minus: u = x, v = y; y x y₂ q₂ becomes y q₂ · x y₂.
            if let Some(m) = pre_m(y2, u) {
                phi_d_minus.push((pair(b.clone(), ks.clone()), pair(pair(v.clone(), q2.clone()), m)));
            }
        }
    }
    Ok(SseWitness {
        c,
        d,
        phi_1: Specification::new(phi_1)?,
        phi_2: Specification::new(phi_2)?,
        phi_c_plus: Specification::new(phi_c_plus)?,
        phi_c_minus: Specification::new(phi_c_minus)?,
        phi_d_plus: Specification::new(phi_d_plus)?,
        phi_d_minus: Specification::new(phi_d_minus)?,
        h,
        k,
    })
}

fn shape_error(a: &str, b: &str, l: usize, e: bisys_core::CoreError) -> EquivalenceError {
    EquivalenceError::Shape(format!("{a}_{} {b}_{}: {e}", 2 * l, 2 * l + 1))
}
