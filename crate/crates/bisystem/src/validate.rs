use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use bisys_core::{display_word, Symbol};
use serde::Serialize;

use crate::{vertex_name, LambdaGraphBisystem, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Every vertex has the required incoming and outgoing edges.
    InOut,
    MinusRightResolving,
    PlusLeftResolving,
    /// The local property at every vertex pair two levels apart.
    Local,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::InOut => "(iii) edges in and out",
            Axiom::MinusRightResolving => "(iv) minus right-resolving",
            Axiom::PlusLeftResolving => "(iv) plus left-resolving",
            Axiom::Local => "(v) local property",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Incoming,
    Outgoing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingEdge {
        side: Side,
        level: usize,
        vertex: usize,
        direction: Direction,
    },
    /// Two edges share the resolving endpoint and the label.
    NotResolving {
        side: Side,
        level: usize,
        vertex: usize,
        label: Symbol,
    },
    /// Label pairs `(minus, plus)` through `E_+^-(u, v)` and `E_-^+(u, v)`,
    /// `u` at `level` and `v` at `level + 2`.
    Local {
        level: usize,
        upper: usize,
        lower: usize,
        minus_plus: Vec<(Symbol, Symbol)>,
        plus_minus: Vec<(Symbol, Symbol)>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = |ps: &[(Symbol, Symbol)]| -> String {
            let items: Vec<String> = ps.iter().map(|(b, a)| format!("({b},{a})")).collect();
            format!("[{}]", items.join(" "))
        };
        match self {
            Violation::MissingEdge { side, level, vertex, direction } => {
                let d = match direction {
                    Direction::Incoming => "incoming",
                    Direction::Outgoing => "outgoing",
                };
                write!(f, "{} has no {d} {side} edge", vertex_name(*level, *vertex))
            }
            Violation::NotResolving { side, level, vertex, label } => {
                write!(f, "{} has two {side} edges labelled {label}", vertex_name(*level, *vertex))
            }
            Violation::Local { level, upper, lower, minus_plus, plus_minus } => write!(
                f,
                "({}, {}): minus-plus labels {} but plus-minus labels {}",
                vertex_name(*level, *upper),
                vertex_name(level + 2, *lower),
                pairs(minus_plus),
                pairs(plus_minus)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub axiom: Axiom,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Fpcc {
    Holds,
    Fails { level: usize, vertex: usize, only_follower: Vec<String>, only_predecessor: Vec<String> },
    NotApplicable { reason: String },
}

impl Fpcc {
    pub fn holds(&self) -> bool {
        matches!(self, Fpcc::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub depth: usize,
    pub verdicts: Vec<Verdict>,
    pub standard: bool,
    pub fpcc: Fpcc,
}

impl ValidationReport {
    /// All structural axioms hold to the stored depth. FPCC and
    /// standardness are reported separately.
    pub fn is_valid(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        self.verdicts.iter().find(|v| v.axiom == axiom).expect("every axiom is reported")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verified to depth {}", self.depth)?;
        for v in &self.verdicts {
            writeln!(f, "{}: {}", v.axiom, if v.passed() { "pass" } else { "FAIL" })?;
            for x in &v.violations {
                writeln!(f, "  {x}")?;
            }
        }
        writeln!(f, "standard: {}", if self.standard { "yes" } else { "no" })?;
        match &self.fpcc {
            Fpcc::Holds => writeln!(f, "FPCC: holds"),
            Fpcc::Fails { level, vertex, only_follower, only_predecessor } => writeln!(
                f,
                "FPCC: fails at {} (only in F: {:?}, only in P: {:?})",
                vertex_name(*level, *vertex),
                only_follower,
                only_predecessor
            ),
            Fpcc::NotApplicable { reason } => writeln!(f, "FPCC: not applicable ({reason})"),
        }
    }
}

pub fn validate(b: &LambdaGraphBisystem) -> ValidationReport {
    let verdicts = vec![
        Verdict { axiom: Axiom::InOut, violations: in_out(b) },
        Verdict { axiom: Axiom::MinusRightResolving, violations: resolving(b, Side::Minus) },
        Verdict { axiom: Axiom::PlusLeftResolving, violations: resolving(b, Side::Plus) },
        Verdict { axiom: Axiom::Local, violations: local(b) },
    ];
    ValidationReport { depth: b.depth(), verdicts, standard: b.is_standard(), fpcc: fpcc_check(b) }
}

fn in_out(b: &LambdaGraphBisystem) -> Vec<Violation> {
    let depth = b.depth();
    let mut out = Vec::new();
    for side in [Side::Minus, Side::Plus] {
        for l in 0..=depth {
            let mut from_above = vec![false; b.level_size(l)];
            let mut to_below = vec![false; b.level_size(l)];
            if l < depth {
                for e in b.edges(side, l) {
                    match side {
                        Side::Minus => from_above[e.target] = true,
                        Side::Plus => from_above[e.source] = true,
                    }
                }
            }
            if l > 0 {
                for e in b.edges(side, l - 1) {
                    match side {
                        Side::Minus => to_below[e.source] = true,
                        Side::Plus => to_below[e.target] = true,
                    }
                }
            }
            // Minus: entered from V_{l+1}, leaving to V_{l-1}.
            // Plus: leaving to V_{l+1}, entered from V_{l-1}.
            let (deeper, shallower) = match side {
                Side::Minus => (Direction::Incoming, Direction::Outgoing),
                Side::Plus => (Direction::Outgoing, Direction::Incoming),
            };
            for v in 0..b.level_size(l) {
                if l < depth && !from_above[v] {
                    out.push(Violation::MissingEdge { side, level: l, vertex: v, direction: deeper });
                }
                if l > 0 && !to_below[v] {
                    out.push(Violation::MissingEdge { side, level: l, vertex: v, direction: shallower });
                }
            }
        }
    }
    out
}

fn resolving(b: &LambdaGraphBisystem, side: Side) -> Vec<Violation> {
    let mut out = BTreeSet::new();
    for l in 0..b.depth() {
        let mut seen = BTreeSet::new();
        for e in b.edges(side, l) {
            // The source of a minus edge and the target of a plus edge both
            // lie at level l + 1.
            let v = match side {
                Side::Minus => e.source,
                Side::Plus => e.target,
            };
            if !seen.insert((v, e.label.clone())) {
                out.insert((l + 1, v, e.label.clone()));
            }
        }
    }
    out.into_iter().map(|(level, vertex, label)| Violation::NotResolving { side, level, vertex, label }).collect()
}

type Corners = BTreeMap<(usize, usize), Vec<(Symbol, Symbol)>>;

/// Label pairs of the two kinds of corner paths between `V_l` and `V_{l+2}`.
pub(crate) fn corners(b: &LambdaGraphBisystem, l: usize) -> (Corners, Corners) {
    let mut minus_plus: Corners = BTreeMap::new();
    for em in b.minus_edges(l) {
        for ep in b.plus_edges(l + 1).iter().filter(|e| e.source == em.source) {
            minus_plus.entry((em.target, ep.target)).or_default().push((em.label.clone(), ep.label.clone()));
        }
    }
    let mut plus_minus: Corners = BTreeMap::new();
    for fp in b.plus_edges(l) {
        for fm in b.minus_edges(l + 1).iter().filter(|e| e.target == fp.target) {
            plus_minus.entry((fp.source, fm.source)).or_default().push((fm.label.clone(), fp.label.clone()));
        }
    }
    for map in [&mut minus_plus, &mut plus_minus] {
        for v in map.values_mut() {
            v.sort();
        }
    }
    (minus_plus, plus_minus)
}

fn local(b: &LambdaGraphBisystem) -> Vec<Violation> {
    let mut out = Vec::new();
    for l in 0..b.depth().saturating_sub(1) {
        let (mp, pm) = corners(b, l);
        let keys: BTreeSet<&(usize, usize)> = mp.keys().chain(pm.keys()).collect();
        for &(u, v) in keys {
            let x = mp.get(&(u, v)).cloned().unwrap_or_default();
            let y = pm.get(&(u, v)).cloned().unwrap_or_default();
            if x != y {
                out.push(Violation::Local { level: l, upper: u, lower: v, minus_plus: x, plus_minus: y });
            }
        }
    }
    out
}

/// Checks `F(u) = P(u)` at every vertex up to the stored depth.
pub fn fpcc_check(b: &LambdaGraphBisystem) -> Fpcc {
    if !b.is_standard() {
        return Fpcc::NotApplicable { reason: format!("V_0 has {} vertices", b.level_size(0)) };
    }
    if !b.has_common_alphabet() {
        return Fpcc::NotApplicable { reason: "the minus and plus alphabets differ".into() };
    }
    let fs = b.follower_sets();
    let ps = b.predecessor_sets();
    for l in 1..=b.depth() {
        for v in 0..b.level_size(l) {
            if fs[l][v] != ps[l][v] {
                let show = |ws: Vec<&Vec<Symbol>>| ws.into_iter().map(|w| display_word(w)).collect();
                return Fpcc::Fails {
                    level: l,
                    vertex: v,
                    only_follower: show(fs[l][v].difference(&ps[l][v]).collect()),
                    only_predecessor: show(ps[l][v].difference(&fs[l][v]).collect()),
                };
            }
        }
    }
    Fpcc::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Edge;

    #[test]
    fn fixtures_validate() {
        for b in [fixtures::full_shift(2, 5), fixtures::golden_mean(5)] {
            let r = validate(&b);
            assert!(r.is_valid(), "{r}");
            assert!(r.fpcc.holds());
        }
    }

    #[test]
    fn printed_even_shift_breaks_the_local_property_at_the_bottom() {
        let r = validate(&fixtures::even_shift(5));
        for axiom in [Axiom::InOut, Axiom::MinusRightResolving, Axiom::PlusLeftResolving] {
            assert!(r.verdict(axiom).passed(), "{r}");
        }
        let pairs: Vec<(usize, usize, usize)> = r
            .verdict(Axiom::Local)
            .violations
            .iter()
            .map(|v| match v {
                Violation::Local { level, upper, lower, .. } => (*level, *upper, *lower),
                other => panic!("unexpected {other}"),
            })
            .collect();
        assert_eq!(pairs, [(0, 0, 1), (0, 0, 2)]);
        assert!(matches!(r.fpcc, Fpcc::Fails { level: 2, vertex: 1, .. }));
    }

    #[test]
    fn deleted_plus_edge_breaks_local_property() {
        let b = fixtures::golden_mean(4);
        let mut plus: Vec<Vec<Edge>> = (0..4).map(|l| b.plus_edges(l).to_vec()).collect();
        let minus: Vec<Vec<Edge>> = (0..4).map(|l| b.minus_edges(l).to_vec()).collect();
        // v2^2 -> v1^3 labelled b.
        let gone = Edge::new(1, 0, "b");
        plus[2].retain(|e| e != &gone);
        let r = validate(&LambdaGraphBisystem::new(b.level_sizes().to_vec(), minus, plus).unwrap());
        let local = r.verdict(Axiom::Local);
        assert!(!local.passed());
        assert!(local.violations.iter().all(|v| matches!(v, Violation::Local { level: 1 | 2, .. })));
        assert!(local.violations.iter().any(|v| matches!(v, Violation::Local { level: 1, lower: 0, .. })));
    }

    #[test]
    fn duplicate_labels_break_resolving() {
        let b = LambdaGraphBisystem::new(
            vec![1, 2],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(1, 0, "a")]],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(0, 1, "a")]],
        )
        .unwrap();
        let r = validate(&b);
        assert!(r.verdict(Axiom::MinusRightResolving).passed());
        assert!(r.verdict(Axiom::PlusLeftResolving).passed());
        let b = LambdaGraphBisystem::new(
            vec![2, 1],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(0, 1, "a")]],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(1, 0, "a")]],
        )
        .unwrap();
        let r = validate(&b);
        assert!(!r.verdict(Axiom::MinusRightResolving).passed());
        assert!(!r.verdict(Axiom::PlusLeftResolving).passed());
        assert!(matches!(r.fpcc, Fpcc::NotApplicable { .. }));
    }

    #[test]
    fn missing_edges_are_named() {
        let b = LambdaGraphBisystem::new(
            vec![1, 2, 1],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(1, 0, "a")], vec![Edge::new(0, 0, "a")]],
            vec![vec![Edge::new(0, 0, "a"), Edge::new(0, 1, "b")], vec![Edge::new(0, 0, "a"), Edge::new(1, 0, "b")]],
        )
        .unwrap();
        let r = validate(&b);
        let v = &r.verdict(Axiom::InOut).violations;
        assert_eq!(
            v,
            &vec![Violation::MissingEdge { side: Side::Minus, level: 1, vertex: 1, direction: Direction::Incoming }]
        );
        assert_eq!(v[0].to_string(), "v2^1 has no incoming minus edge");
    }
}
