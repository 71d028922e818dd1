//! Canonical λ-graph bisystems of sofic subshifts.
//!
//! Two points are centrally equivalent at level `l` when they admit the same
//! words of length `l` between a fixed left ray and a fixed right ray. The
//! classes are the vertices of `V_l`; `V_0` is the single class of the whole
//! shift. A plus edge `v_i^l -> v_j^{l+1}` labelled `α` exists when dropping
//! a final `α` from the words of `v_j^{l+1}` gives exactly the words of
//! `v_i^l`, and a minus edge `v_j^{l+1} -> v_i^l` labelled `β` when dropping
//! a leading `β` does. Every class's word set is then both its follower set
//! and its predecessor set.

use std::collections::{BTreeMap, BTreeSet};

use bisys_bisystem::{fpcc_check, validate, Edge, LambdaGraphBisystem, ValidationReport};
use bisys_core::{display_word, Symbol, Word};
use bisys_smb::{to_smb, SymbolicMatrixBisystem};
use bisys_subshift::{fill_in_words, realizable_pairs, LabeledGraph, StateSet, SubshiftError, SubshiftPresentation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("depth must be at least 1")]
    DepthZero,
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Bisystem(#[from] bisys_bisystem::BisystemError),
    /// A representative disagrees with its class about an edge.
    #[error("level {level}, class {class}, symbol {symbol}: {detail}")]
    Inconsistent { level: usize, class: usize, symbol: Symbol, detail: String },
    #[error("canonical bisystem of an irreducible presentation fails validation:\n{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CanonicalError>;

/// One vertex: its fill-in words and the (past, future) splices producing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralClass {
    pub level: usize,
    pub words: BTreeSet<Word>,
    pub pairs: Vec<(StateSet, StateSet)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub states: usize,
    pub irreducible: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CanonicalBuild {
    pub bisystem: LambdaGraphBisystem,
    pub classes: Vec<Vec<CentralClass>>,
    pub provenance: Provenance,
    pub report: ValidationReport,
}

/// The distinct fill-in word sets of length `l`, sorted.
pub fn central_classes(presentation: &SubshiftPresentation, l: usize) -> Result<Vec<CentralClass>> {
    Ok(classes_of(&presentation.graph()?, l))
}

fn classes_of(g: &LabeledGraph, l: usize) -> Vec<CentralClass> {
    let mut by_words: BTreeMap<BTreeSet<Word>, Vec<(StateSet, StateSet)>> = BTreeMap::new();
    for (p, f) in realizable_pairs(g, l) {
        let words: BTreeSet<Word> = fill_in_words(g, &p, &f, l).into_iter().collect();
        by_words.entry(words).or_default().push((p, f));
    }
    by_words.into_iter().map(|(words, pairs)| CentralClass { level: l, words, pairs }).collect()
}

/// `{w : wα ∈ W}` when `right`, `{w : αw ∈ W}` otherwise.
fn quotient(words: &BTreeSet<Word>, a: &Symbol, right: bool) -> BTreeSet<Word> {
    words
        .iter()
        .filter_map(|w| match right {
            true if w.last() == Some(a) => Some(w[..w.len() - 1].to_vec()),
            false if w.first() == Some(a) => Some(w[1..].to_vec()),
            _ => None,
        })
        .collect()
}

/// Builds levels `0..=depth`. Each edge is derived from the word sets and
/// then rechecked on every representative splice of the deeper class.
pub fn canonical_bisystem(presentation: &SubshiftPresentation, depth: usize) -> Result<CanonicalBuild> {
    if depth == 0 {
        return Err(CanonicalError::DepthZero);
    }
    let g = presentation.graph()?;
    let irreducible = g.is_irreducible();
    let mut warnings = Vec::new();
    if !irreducible {
        warnings.push("presentation is reducible; classes come from realisable splices".to_string());
    }
    let classes: Vec<Vec<CentralClass>> = (0..=depth).map(|l| classes_of(&g, l)).collect();
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for l in 0..depth {
        let index: BTreeMap<&BTreeSet<Word>, usize> =
            classes[l].iter().enumerate().map(|(i, c)| (&c.words, i)).collect();
        let (mut m, mut p) = (Vec::new(), Vec::new());
        for (j, class) in classes[l + 1].iter().enumerate() {
            for a in g.alphabet().iter() {
                for right in [true, false] {
                    let q = quotient(&class.words, a, right);
                    if q.is_empty() {
                        continue;
                    }
                    let Some(&i) = index.get(&q) else {
                        return Err(CanonicalError::Inconsistent {
                            level: l + 1,
                            class: j,
                            symbol: a.clone(),
                            detail: "quotient is not a class of the level above".into(),
                        });
                    };
                    check_representatives(&g, class, a, right, &q, l + 1, j)?;
                    if right {
                        p.push(Edge { source: i, target: j, label: a.clone() });
                    } else {
                        m.push(Edge { source: j, target: i, label: a.clone() });
                    }
                }
            }
        }
        minus.push(m);
        plus.push(p);
    }
    let sizes = classes.iter().map(Vec::len).collect();
    let bisystem = LambdaGraphBisystem::new(sizes, minus, plus)?;
    let report = validate(&bisystem);
    if irreducible && (!report.is_valid() || !fpcc_check(&bisystem).holds()) {
        return Err(CanonicalError::Invalid(report.to_string()));
    }
    if !report.is_valid() {
        warnings.push("the build fails validation".to_string());
    }
    Ok(CanonicalBuild {
        bisystem,
        classes,
        provenance: Provenance { states: g.states(), irreducible, warnings },
        report,
    })
}

/// Moving `α` from the gap into the left ray, or `β` into the right ray,
/// must give the quotient class on every splice of the deeper class.
fn check_representatives(
    g: &LabeledGraph,
    class: &CentralClass,
    a: &Symbol,
    right: bool,
    expected: &BTreeSet<Word>,
    level: usize,
    index: usize,
) -> Result<()> {
    for (p, f) in &class.pairs {
        let (p2, f2) = if right { (p.clone(), g.step_back(f, a)) } else { (g.step(p, a), f.clone()) };
        let got: BTreeSet<Word> = fill_in_words(g, &p2, &f2, level - 1).into_iter().collect();
        if &got != expected {
            let shown: Vec<String> = got.iter().map(|w| display_word(w)).collect();
            return Err(CanonicalError::Inconsistent {
                level,
                class: index,
                symbol: a.clone(),
                detail: format!("a representative gives {shown:?}"),
            });
        }
    }
    Ok(())
}

pub fn canonical_smb(presentation: &SubshiftPresentation, depth: usize) -> Result<SymbolicMatrixBisystem> {
    Ok(to_smb(&canonical_bisystem(presentation, depth)?.bisystem))
}
