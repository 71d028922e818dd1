//! Exact past and future state sets of infinite rays.
//!
//! For a word `w` let `R_w` be the boolean relation "some path labelled `w`
//! runs from `p` to `q`". Extending a left ray one symbol at a time walks
//! through the finite monoid of such relations, `R_{aw} = R_a R_w`, and the
//! set of states at which the ray can end is the eventual column support.
//! A set `S` is the past of some left ray exactly when some reachable
//! relation with column support `S` starts an infinite walk that never
//! leaves support `S`. Futures of right rays are the mirror image.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{fill_in_words, LabeledGraph, StateSet};

type Relation = Vec<StateSet>;

fn letter(g: &LabeledGraph, a: &bisys_core::Symbol) -> Relation {
    let n = g.states();
    let mut rel = vec![StateSet::empty(n); n];
    for e in g.edges() {
        if &e.label == a {
            rel[e.source].insert(e.target);
        }
    }
    rel
}

fn compose(x: &Relation, y: &Relation) -> Relation {
    let n = x.len();
    x.iter()
        .map(|row| {
            let mut out = StateSet::empty(n);
            for j in row.iter() {
                out.union_with(&y[j]);
            }
            out
        })
        .collect()
}

fn column_support(r: &Relation) -> StateSet {
    let mut s = StateSet::empty(r.len());
    for row in r {
        s.union_with(row);
    }
    s
}

fn row_support(r: &Relation) -> StateSet {
    StateSet::from_states(r.len(), r.iter().enumerate().filter(|(_, row)| !row.is_empty()).map(|(i, _)| i))
}

fn is_zero(r: &Relation) -> bool {
    r.iter().all(StateSet::is_empty)
}

/// Sets `S` admitting an infinite walk, under `extend`, that stays among
/// relations whose `support` equals `S`.
fn persistent_supports(
    g: &LabeledGraph,
    extend: impl Fn(&Relation, &Relation) -> Relation,
    support: impl Fn(&Relation) -> StateSet,
) -> Vec<StateSet> {
    let letters: Vec<Relation> = g.alphabet().iter().map(|a| letter(g, a)).collect();
    let mut index: BTreeMap<Relation, usize> = BTreeMap::new();
    let mut nodes: Vec<Relation> = Vec::new();
    let mut queue = VecDeque::new();
    for r in &letters {
        if !is_zero(r) && !index.contains_key(r) {
            index.insert(r.clone(), nodes.len());
            nodes.push(r.clone());
            queue.push_back(nodes.len() - 1);
        }
    }
    let mut succ: Vec<Vec<usize>> = Vec::new();
    while let Some(k) = queue.pop_front() {
        let mut out = Vec::new();
        for a in &letters {
            let next = extend(a, &nodes[k]);
            if is_zero(&next) {
                continue;
            }
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    index.insert(next.clone(), nodes.len());
                    nodes.push(next);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            out.push(id);
        }
        if succ.len() <= k {
            succ.resize(k + 1, Vec::new());
        }
        succ[k] = out;
    }
    succ.resize(nodes.len(), Vec::new());
    let supports: Vec<StateSet> = nodes.iter().map(&support).collect();
    let mut found = BTreeSet::new();
    let distinct: BTreeSet<&StateSet> = supports.iter().collect();
    for s in distinct {
        let mut alive: BTreeSet<usize> = (0..nodes.len()).filter(|&k| &supports[k] == s).collect();
        loop {
            let dead: Vec<usize> =
                alive.iter().copied().filter(|&k| !succ[k].iter().any(|t| alive.contains(t))).collect();
            if dead.is_empty() {
                break;
            }
            for d in dead {
                alive.remove(&d);
            }
        }
        if !alive.is_empty() {
            found.insert(s.clone());
        }
    }
    found.into_iter().collect()
}

/// Every state set that is the past of some left-infinite admissible ray.
pub fn ray_pasts(g: &LabeledGraph) -> Vec<StateSet> {
    persistent_supports(g, compose, column_support)
}

/// Every state set that is the future of some right-infinite admissible ray.
pub fn ray_futures(g: &LabeledGraph) -> Vec<StateSet> {
    persistent_supports(g, |a, r| compose(r, a), row_support)
}

/// Pairs of ray past and ray future joined by at least one path of length
/// `gap`; these are exactly the splices realised by points of the shift.
pub fn realizable_pairs(g: &LabeledGraph, gap: usize) -> Vec<(StateSet, StateSet)> {
    let pasts = ray_pasts(g);
    let futures = ray_futures(g);
    let mut out = Vec::new();
    for p in &pasts {
        for f in &futures {
            if !fill_in_words(g, p, f, gap).is_empty() {
                out.push((p.clone(), f.clone()));
            }
        }
    }
    out
}
