use std::collections::BTreeSet;
use std::fmt;

use bisys_core::{specified_equivalent, Specification, Symbol, SymbolicMatrix};
use bisys_smb::SymbolicMatrixBisystem;
use serde::Serialize;

use crate::witness::fused_product;
use crate::{PsseWitness, SseWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Psse,
    Sse,
}

/// The equation families of the two notions of equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    MPlus,
    MMinus,
    NPlus,
    NMinus,
    YP,
    XQ,
    XP,
    YQ,
    MinusPlusM,
    MinusPlusN,
    PlusC,
    PlusD,
    MinusC,
    MinusD,
}

impl Equation {
    /// The equation at level `l` in the usual notation.
    pub fn at(self, l: usize) -> String {
        let (e, o, e2) = (2 * l, 2 * l + 1, 2 * l + 2);
        match self {
            Equation::MPlus => format!("M⁺_{l} ≃φ P_{e} Q_{o}"),
            Equation::MMinus => format!("M⁻_{l} ≃κφ X_{e} Y_{o}"),
            Equation::NPlus => format!("N⁺_{l} ≃φ Q_{e} P_{o}"),
            Equation::NMinus => format!("N⁻_{l} ≃κφ Y_{e} X_{o}"),
            Equation::YP => format!("Y_{o} P_{e2} ≃κ P_{o} Y_{e2}"),
            Equation::XQ => format!("X_{o} Q_{e2} ≃κ Q_{o} X_{e2}"),
            Equation::XP => format!("X_{e} P_{o} ≃κ P_{e} X_{o}"),
            Equation::YQ => format!("Y_{e} Q_{o} ≃κ Q_{e} Y_{o}"),
            Equation::MinusPlusM => format!("M⁻_{l} M⁺_{} ≃φ₁ H_{l} K_{}", l + 1, l + 1),
            Equation::MinusPlusN => format!("N⁻_{l} N⁺_{} ≃φ₂ K_{l} H_{}", l + 1, l + 1),
            Equation::PlusC => format!("M⁺_{l} H_{} ≃φC⁺ H_{l} N⁺_{}", l + 1, l + 1),
            Equation::PlusD => format!("N⁺_{l} K_{} ≃φD⁺ K_{l} M⁺_{}", l + 1, l + 1),
            Equation::MinusC => format!("M⁻_{l} H_{} ≃φC⁻ H_{l} N⁻_{}", l + 1, l + 1),
            Equation::MinusD => format!("N⁻_{l} K_{} ≃φD⁻ K_{l} M⁻_{}", l + 1, l + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "equation", rename_all = "snake_case")]
pub enum Check {
    Shape,
    Alphabet,
    Equation(Equation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub level: usize,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.check {
            Check::Shape => write!(f, "shape: {}", self.detail),
            Check::Alphabet => write!(f, "alphabet: {}", self.detail),
            Check::Equation(e) => write!(f, "level {}: {} fails: {}", self.level, e.at(self.level), self.detail),
        }
    }
}

/// Outcome of a witness check to a finite depth. Failures are listed in
/// level order, so the first one is the earliest level that breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub mode: Mode,
    pub depth: usize,
    pub equations_checked: usize,
    pub failures: Vec<Failure>,
    /// Product symbols over `C·D` or `D·C` that no symbol specifies to.
    pub unused_products: Vec<Symbol>,
}

impl EquivalenceReport {
    fn new(mode: Mode, depth: usize) -> Self {
        EquivalenceReport { mode, depth, equations_checked: 0, failures: Vec::new(), unused_products: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    fn fail(&mut self, check: Check, level: usize, detail: impl Into<String>) {
        self.failures.push(Failure { check, level, detail: detail.into() });
    }

    fn equation(&mut self, eq: Equation, level: usize, outcome: Result<(), String>) {
        self.equations_checked += 1;
        if let Err(detail) = outcome {
            self.fail(Check::Equation(eq), level, detail);
        }
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.mode {
            Mode::Psse => "properly strong shift equivalence in 1-step",
            Mode::Sse => "strong shift equivalence in 1-step",
        };
        match self.first_failure() {
            None => writeln!(f, "{name}: verified to depth {} ({} equations)", self.depth, self.equations_checked)?,
            Some(x) => writeln!(f, "{name}: FAILS, first failure {x}")?,
        }
        if !self.unused_products.is_empty() {
            writeln!(f, "{} product symbols are not specified to (unused)", self.unused_products.len())?;
        }
        Ok(())
    }
}

fn level_sizes(s: &SymbolicMatrixBisystem, name: &str, report: &mut EquivalenceReport) -> Option<Vec<usize>> {
    match s.level_sizes() {
        Ok(m) => Some(m),
        Err(e) => {
            report.fail(Check::Shape, 0, format!("{name}: {e}"));
            None
        }
    }
}

fn check_depth(depth: usize, available: &[(&str, usize)], report: &mut EquivalenceReport) -> bool {
    if depth == 0 {
        report.fail(Check::Shape, 0, "depth must be at least 1");
        return false;
    }
    for (name, d) in available {
        if *d < depth {
            report.fail(Check::Shape, 0, format!("{name} has {d} levels, {depth} requested"));
        }
    }
    report.holds()
}

fn expect_shape(report: &mut EquivalenceReport, name: &str, k: usize, m: &SymbolicMatrix, expected: (usize, usize)) {
    if m.shape() != expected {
        let (r, c) = m.shape();
        report.fail(Check::Shape, k / 2, format!("{name}_{k} is {r}x{c}, expected {}x{}", expected.0, expected.1));
    }
}

fn expect_over(
    report: &mut EquivalenceReport,
    name: &str,
    k: usize,
    m: &SymbolicMatrix,
    alphabet: &BTreeSet<Symbol>,
    label: &str,
) {
    if let Some(s) = m.symbols().into_iter().find(|s| !alphabet.contains(s)) {
        report.fail(Check::Alphabet, k, format!("{name}_{k} contains `{s}`, which is not in {label}"));
    }
}

fn expect_image(
    report: &mut EquivalenceReport,
    name: &str,
    spec: &Specification,
    first: &BTreeSet<Symbol>,
    second: &BTreeSet<Symbol>,
) {
    for (a, img) in spec.iter() {
        let ok = img.factors().is_some_and(|(u, v)| first.contains(u) && second.contains(v));
        if !ok {
            report.fail(Check::Alphabet, 0, format!("{name}({a}) = {img} is not a product of the witness alphabets"));
        }
    }
}

fn specified(
    a: bisys_core::Result<SymbolicMatrix>,
    b: bisys_core::Result<SymbolicMatrix>,
    spec: &Specification,
) -> Result<(), String> {
    let a = a.map_err(|e| e.to_string())?;
    let b = b.map_err(|e| e.to_string())?;
    specified_equivalent(&a, &b, spec).map_err(|m| m.to_string())
}

fn exchanged(
    left: bisys_core::Result<SymbolicMatrix>,
    right: bisys_core::Result<SymbolicMatrix>,
) -> Result<(), String> {
    let left = left.and_then(|m| m.kappa()).map_err(|e| e.to_string())?;
    let right = right.map_err(|e| e.to_string())?;
    if left == right {
        return Ok(());
    }
    let cell = left.entries().find(|(i, j, v)| *v != right.get(*i, *j)).expect("unequal matrices differ in a cell");
    Err(format!("cell ({},{}): κ gives `{}`, expected `{}`", cell.0, cell.1, cell.2, right.get(cell.0, cell.1)))
}

fn unused(spec: &Specification, first: &BTreeSet<Symbol>, second: &BTreeSet<Symbol>) -> Vec<Symbol> {
    let image = spec.image();
    first
        .iter()
        .flat_map(|u| second.iter().map(move |v| Symbol::pair(u.clone(), v.clone())))
        .filter(|s| !image.contains(s))
        .collect()
}

/// Checks the properly strong equations for levels `0..depth`:
/// `M⁺_l ≃φ P_{2l}Q_{2l+1}`, `M⁻_l ≃κφ X_{2l}Y_{2l+1}`, the same for `N`
/// with `Q P` and `Y X`, the exchanges `Y_{2l+1}P_{2l+2} ≃κ P_{2l+1}Y_{2l+2}`
/// and `X_{2l+1}Q_{2l+2} ≃κ Q_{2l+1}X_{2l+2}` wherever index `2l+2` exists,
/// and `X_{2l}P_{2l+1} ≃κ P_{2l}X_{2l+1}`, `Y_{2l}Q_{2l+1} ≃κ Q_{2l}Y_{2l+1}`.
pub fn verify_psse_1step(
    sm: &SymbolicMatrixBisystem,
    sn: &SymbolicMatrixBisystem,
    w: &PsseWitness,
    depth: usize,
) -> EquivalenceReport {
    let mut r = EquivalenceReport::new(Mode::Psse, depth);
    let (Some(m), Some(n)) = (level_sizes(sm, "M", &mut r), level_sizes(sn, "N", &mut r)) else {
        return r;
    };
    if !check_depth(depth, &[("M", sm.depth()), ("N", sn.depth()), ("the witness", w.depth())], &mut r) {
        return r;
    }
    let top = 2 * depth;
    let c: Vec<usize> = (0..top).map(|k| w.p[k].rows()).chain([w.q[top - 1].cols()]).collect();
    let d: Vec<usize> = (0..top).map(|k| w.q[k].rows()).chain([w.p[top - 1].cols()]).collect();
    for k in 0..top {
        expect_shape(&mut r, "P", k, &w.p[k], (c[k], d[k + 1]));
        expect_shape(&mut r, "Q", k, &w.q[k], (d[k], c[k + 1]));
        let (xs, ys) =
            if k % 2 == 0 { ((c[k], c[k + 1]), (d[k], d[k + 1])) } else { ((d[k], d[k + 1]), (c[k], c[k + 1])) };
        expect_shape(&mut r, "X", k, &w.x[k], xs);
        expect_shape(&mut r, "Y", k, &w.y[k], ys);
    }
    for l in 0..=depth {
        if c[2 * l] != m[l] {
            r.fail(Check::Shape, l, format!("c({}) = {} but m({l}) = {}", 2 * l, c[2 * l], m[l]));
        }
        if d[2 * l] != n[l] {
            r.fail(Check::Shape, l, format!("d({}) = {} but n({l}) = {}", 2 * l, d[2 * l], n[l]));
        }
    }
    if !r.holds() {
        return r;
    }
    if let Some(s) = w.c.intersection(&w.d).next() {
        r.fail(Check::Alphabet, 0, format!("`{s}` lies in both C and D"));
    }
    for k in 0..top {
        expect_over(&mut r, "P", k, &w.p[k], &w.c, "C");
        expect_over(&mut r, "Y", k, &w.y[k], &w.c, "C");
        expect_over(&mut r, "Q", k, &w.q[k], &w.d, "D");
        expect_over(&mut r, "X", k, &w.x[k], &w.d, "D");
    }
    expect_image(&mut r, "φ_M", &w.phi_m, &w.c, &w.d);
    expect_image(&mut r, "φ_N", &w.phi_n, &w.d, &w.c);
    r.unused_products = unused(&w.phi_m, &w.c, &w.d);
    r.unused_products.extend(unused(&w.phi_n, &w.d, &w.c));
    if !r.holds() {
        return r;
    }

    let fp = fused_product;
    let (p, q, x, y) = (&w.p, &w.q, &w.x, &w.y);
    for l in 0..depth {
        let (e, o) = (2 * l, 2 * l + 1);
        r.equation(Equation::MPlus, l, specified(Ok(sm.plus(l).clone()), fp(&p[e], &q[o]), &w.phi_m));
        r.equation(
            Equation::MMinus,
            l,
            specified(Ok(sm.minus(l).clone()), fp(&x[e], &y[o]).and_then(|m| m.kappa()), &w.phi_m),
        );
        r.equation(Equation::NPlus, l, specified(Ok(sn.plus(l).clone()), fp(&q[e], &p[o]), &w.phi_n));
        r.equation(
            Equation::NMinus,
            l,
            specified(Ok(sn.minus(l).clone()), fp(&y[e], &x[o]).and_then(|m| m.kappa()), &w.phi_n),
        );
        if l + 1 < depth {
            let e2 = 2 * l + 2;
            r.equation(Equation::YP, l, exchanged(fp(&y[o], &p[e2]), fp(&p[o], &y[e2])));
            r.equation(Equation::XQ, l, exchanged(fp(&x[o], &q[e2]), fp(&q[o], &x[e2])));
        }
        r.equation(Equation::XP, l, exchanged(fp(&x[e], &p[o]), fp(&p[e], &x[o])));
        r.equation(Equation::YQ, l, exchanged(fp(&y[e], &q[o]), fp(&q[e], &y[o])));
    }
    r
}

/// Checks the strong equations for levels `l` with `l + 1 < depth`:
/// `M⁻_l M⁺_{l+1} ≃φ₁ H_l K_{l+1}`, `N⁻_l N⁺_{l+1} ≃φ₂ K_l H_{l+1}` and the
/// four intertwinings through `φ_C^±`, `φ_D^±`.
pub fn verify_sse_1step(
    sm: &SymbolicMatrixBisystem,
    sn: &SymbolicMatrixBisystem,
    w: &SseWitness,
    depth: usize,
) -> EquivalenceReport {
    let mut r = EquivalenceReport::new(Mode::Sse, depth);
    let (Some(m), Some(n)) = (level_sizes(sm, "M", &mut r), level_sizes(sn, "N", &mut r)) else {
        return r;
    };
    if !check_depth(depth, &[("M", sm.depth()), ("N", sn.depth()), ("the witness", w.depth())], &mut r) {
        return r;
    }
    for l in 0..depth {
        for (name, mat, expected) in [("H", &w.h[l], (m[l], n[l + 1])), ("K", &w.k[l], (n[l], m[l + 1]))] {
            if mat.shape() != expected {
                let (a, b) = mat.shape();
                r.fail(Check::Shape, l, format!("{name}_{l} is {a}x{b}, expected {}x{}", expected.0, expected.1));
            }
        }
    }
    if !r.holds() {
        return r;
    }
    if let Some(s) = w.c.intersection(&w.d).next() {
        r.fail(Check::Alphabet, 0, format!("`{s}` lies in both C and D"));
    }
    for l in 0..depth {
        expect_over(&mut r, "H", l, &w.h[l], &w.c, "C");
        expect_over(&mut r, "K", l, &w.k[l], &w.d, "D");
    }
    if !r.holds() {
        return r;
    }
    let fp = fused_product;
    let (h, k) = (&w.h, &w.k);
    for l in 0..depth.saturating_sub(1) {
        let u = l + 1;
        r.equation(Equation::MinusPlusM, l, specified(fp(sm.minus(l), sm.plus(u)), fp(&h[l], &k[u]), &w.phi_1));
        r.equation(Equation::MinusPlusN, l, specified(fp(sn.minus(l), sn.plus(u)), fp(&k[l], &h[u]), &w.phi_2));
        r.equation(Equation::PlusC, l, specified(fp(sm.plus(l), &h[u]), fp(&h[l], sn.plus(u)), &w.phi_c_plus));
        r.equation(Equation::PlusD, l, specified(fp(sn.plus(l), &k[u]), fp(&k[l], sm.plus(u)), &w.phi_d_plus));
        r.equation(Equation::MinusC, l, specified(fp(sm.minus(l), &h[u]), fp(&h[l], sn.minus(u)), &w.phi_c_minus));
        r.equation(Equation::MinusD, l, specified(fp(sn.minus(l), &k[u]), fp(&k[l], sm.minus(u)), &w.phi_d_minus));
    }
    r
}
