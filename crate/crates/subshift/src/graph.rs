use std::collections::BTreeSet;
use std::fmt;

use bisys_core::{Alphabet, Symbol};
use serde::{Deserialize, Serialize};

use crate::{Result, SubshiftError};

/// A subset of the states of a presentation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet {
    bits: Vec<bool>,
}

impl StateSet {
    pub fn empty(n: usize) -> StateSet {
        StateSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> StateSet {
        StateSet { bits: vec![true; n] }
    }

    pub fn from_states(n: usize, states: impl IntoIterator<Item = usize>) -> StateSet {
        let mut s = StateSet::empty(n);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn insert(&mut self, q: usize) {
        self.bits[q] = true;
    }

    pub fn contains(&self, q: usize) -> bool {
        self.bits[q]
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| q)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(&a, &b)| a && b)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub label: Symbol,
}

/// A finite labelled directed graph in which every state has at least one
/// incoming and one outgoing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    states: usize,
    edges: Vec<GraphEdge>,
    alphabet: Alphabet,
}

impl LabeledGraph {
    pub fn new(states: usize, mut edges: Vec<GraphEdge>) -> Result<LabeledGraph> {
        let mut has_out = vec![false; states];
        let mut has_in = vec![false; states];
        for e in &edges {
            for q in [e.source, e.target] {
                if q >= states {
                    return Err(SubshiftError::StateOutOfRange(q));
                }
            }
            has_out[e.source] = true;
            has_in[e.target] = true;
        }
        for q in 0..states {
            if !has_out[q] {
                return Err(SubshiftError::NotEssential { state: q, missing: "outgoing" });
            }
            if !has_in[q] {
                return Err(SubshiftError::NotEssential { state: q, missing: "incoming" });
            }
        }
        edges.sort();
        edges.dedup();
        let alphabet = Alphabet::collect(edges.iter().map(|e| e.label.clone()))?;
        Ok(LabeledGraph { states, edges, alphabet })
    }

    /// Convenience constructor from `(source, target, label)` triples.
    pub fn from_triples(states: usize, triples: &[(usize, usize, &str)]) -> Result<LabeledGraph> {
        LabeledGraph::new(
            states,
            triples.iter().map(|&(source, target, l)| GraphEdge { source, target, label: Symbol::atom(l) }).collect(),
        )
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// States reachable from `from` by one edge labelled `a`.
    pub fn step(&self, from: &StateSet, a: &Symbol) -> StateSet {
        let mut out = StateSet::empty(self.states);
        for e in &self.edges {
            if &e.label == a && from.contains(e.source) {
                out.insert(e.target);
            }
        }
        out
    }

    /// States with an edge labelled `a` into `to`.
    pub fn step_back(&self, to: &StateSet, a: &Symbol) -> StateSet {
        let mut out = StateSet::empty(self.states);
        for e in &self.edges {
            if &e.label == a && to.contains(e.target) {
                out.insert(e.source);
            }
        }
        out
    }

    pub fn is_left_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.target, e.label.clone())))
    }

    pub fn is_right_resolving(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.source, e.label.clone())))
    }

    /// True when the underlying directed graph is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let reach = |forward: bool| {
            let mut seen = vec![false; self.states];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(q) = stack.pop() {
                for e in &self.edges {
                    let (a, b) = if forward { (e.source, e.target) } else { (e.target, e.source) };
                    if a == q && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        self.states > 0 && reach(true) && reach(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_stranded_states() {
        let err = LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "b")]).unwrap_err();
        assert_eq!(err, SubshiftError::NotEssential { state: 1, missing: "outgoing" });
    }

    #[test]
    fn resolving_flags() {
        let g = LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "a"), (1, 0, "b")]).unwrap();
        assert!(g.is_left_resolving());
        assert!(!g.is_right_resolving());
        assert!(g.is_irreducible());
    }
}
