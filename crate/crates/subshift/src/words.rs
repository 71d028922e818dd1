use bisys_core::{display_word, Symbol, Word};

use crate::{LabeledGraph, Result, StateSet, SubshiftError, SubshiftPresentation};

/// All admissible words of length `n`, in lexicographic symbol order.
pub fn admissible_words(presentation: &SubshiftPresentation, n: usize) -> Result<Vec<Word>> {
    let g = presentation.graph()?;
    let all = StateSet::full(g.states());
    Ok(words_between(&g, &all, &all, n))
}

/// Labels of paths of length `n` from a state of `from` to a state of `to`.
pub fn fill_in_words(g: &LabeledGraph, from: &StateSet, to: &StateSet, n: usize) -> Vec<Word> {
    words_between(g, from, to, n)
}

fn words_between(g: &LabeledGraph, from: &StateSet, to: &StateSet, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if from.is_empty() || to.is_empty() {
        return out;
    }
    let mut prefix = Vec::with_capacity(n);
    extend(g, from, to, n, &mut prefix, &mut out);
    out
}

fn extend(
    g: &LabeledGraph,
    current: &StateSet,
    to: &StateSet,
    remaining: usize,
    prefix: &mut Vec<Symbol>,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        if current.intersects(to) {
            out.push(prefix.clone());
        }
        return;
    }
    for a in g.alphabet().iter() {
        let next = g.step(current, a);
        if next.is_empty() {
            continue;
        }
        prefix.push(a.clone());
        extend(g, &next, to, remaining - 1, prefix, out);
        prefix.pop();
    }
}

/// Terminal states of the paths labelled `w`. Every state has an incoming
/// edge, so these are exactly the states at which arbitrarily long left
/// extensions of `w` can end.
pub fn past_state_set(g: &LabeledGraph, w: &[Symbol]) -> Result<StateSet> {
    let mut set = StateSet::full(g.states());
    for a in w {
        set = g.step(&set, a);
    }
    if set.is_empty() {
        return Err(SubshiftError::NotAdmissible(display_word(w)));
    }
    Ok(set)
}

/// Initial states of the paths labelled `w`.
pub fn future_state_set(g: &LabeledGraph, w: &[Symbol]) -> Result<StateSet> {
    let mut set = StateSet::full(g.states());
    for a in w.iter().rev() {
        set = g.step_back(&set, a);
    }
    if set.is_empty() {
        return Err(SubshiftError::NotAdmissible(display_word(w)));
    }
    Ok(set)
}
