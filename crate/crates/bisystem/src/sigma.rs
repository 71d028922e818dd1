//! Finite-depth search for σ-condition (I) witnesses.
//!
//! A point through `(v_i^l, ξ)` is pinned down, as far as the truncation
//! allows, by a plus path word `w` of length `k + r` leaving `v_i^l`. If no
//! shifted window `w_a[n..n+r]` with `1 ≤ n ≤ k` equals any leading window
//! `w_b[0..r]`, then the chosen points are pairwise separated by `σⁿ`.

use std::collections::BTreeSet;

use bisys_core::Word;
use serde::Serialize;

use crate::{BisystemError, LambdaGraphBisystem, Result};

const NODE_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaChoice {
    pub vertex: usize,
    pub follower: Word,
    pub path: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaWitness {
    pub level: usize,
    pub k: usize,
    pub window: usize,
    pub choices: Vec<SigmaChoice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SigmaOutcome {
    Witness(SigmaWitness),
    /// No window up to the stored depth separates the points.
    Absent {
        depth: usize,
    },
    Inconclusive {
        reason: String,
    },
}

pub fn sigma_condition_i_witness(b: &LambdaGraphBisystem, l: usize, k: usize) -> Result<SigmaOutcome> {
    if k == 0 || k > l {
        return Err(BisystemError::Query(format!("need 1 ≤ k ≤ l, got k = {k}, l = {l}")));
    }
    if l > b.depth() {
        return Err(BisystemError::Query(format!("level {l} exceeds depth {}", b.depth())));
    }
    if l + k + 1 > b.depth() {
        return Ok(SigmaOutcome::Inconclusive {
            reason: format!("depth {} leaves no room for paths of length {}", b.depth(), k + 1),
        });
    }
    let followers = b.follower_sets();
    let mut budget = NODE_BUDGET;
    for r in 1..=b.depth() - l - k {
        let candidates: Vec<Vec<Word>> = (0..b.level_size(l))
            .map(|v| plus_words(b, l, v, k + r).into_iter().filter(|w| self_consistent(w, k, r)).collect())
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by_key(|&v| candidates[v].len());
        let mut chosen = vec![None; candidates.len()];
        let mut state = Windows::default();
        match search(&candidates, &order, 0, k, r, &mut state, &mut chosen, &mut budget) {
            Some(true) => {
                let choices = (0..candidates.len())
                    .flat_map(|v| {
                        let path = candidates[v][chosen[v].expect("all chosen")].clone();
                        followers[l][v].iter().map(move |xi| SigmaChoice {
                            vertex: v,
                            follower: xi.clone(),
                            path: path.clone(),
                        })
                    })
                    .collect();
                return Ok(SigmaOutcome::Witness(SigmaWitness { level: l, k, window: r, choices }));
            }
            Some(false) => {}
            None => {
                return Ok(SigmaOutcome::Inconclusive { reason: format!("search budget exhausted at window {r}") });
            }
        }
    }
    Ok(SigmaOutcome::Absent { depth: b.depth() })
}

fn plus_words(b: &LambdaGraphBisystem, l: usize, v: usize, len: usize) -> Vec<Word> {
    let mut layer: BTreeSet<(usize, Word)> = BTreeSet::from([(v, Word::new())]);
    for step in 0..len {
        let mut next = BTreeSet::new();
        for (q, w) in &layer {
            for e in b.plus_edges(l + step).iter().filter(|e| e.source == *q) {
                let mut w2 = w.clone();
                w2.push(e.label.clone());
                next.insert((e.target, w2));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(_, w)| w).collect::<BTreeSet<_>>().into_iter().collect()
}

fn shifts(w: &Word, k: usize, r: usize) -> impl Iterator<Item = &[bisys_core::Symbol]> {
    (1..=k).map(move |n| &w[n..n + r])
}

fn self_consistent(w: &Word, k: usize, r: usize) -> bool {
    shifts(w, k, r).all(|s| s != &w[..r])
}

#[derive(Default)]
struct Windows {
    leading: Vec<Word>,
    shifted: Vec<Word>,
}

#[allow(clippy::too_many_arguments)]
fn search(
    candidates: &[Vec<Word>],
    order: &[usize],
    depth: usize,
    k: usize,
    r: usize,
    state: &mut Windows,
    chosen: &mut [Option<usize>],
    budget: &mut usize,
) -> Option<bool> {
    if depth == order.len() {
        return Some(true);
    }
    let v = order[depth];
    for (idx, w) in candidates[v].iter().enumerate() {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let lead = &w[..r];
        if state.shifted.iter().any(|s| s.as_slice() == lead) {
            continue;
        }
        if shifts(w, k, r).any(|s| state.leading.iter().any(|p| p.as_slice() == s)) {
            continue;
        }
        state.leading.push(lead.to_vec());
        let added = k;
        state.shifted.extend(shifts(w, k, r).map(<[_]>::to_vec));
        chosen[v] = Some(idx);
        match search(candidates, order, depth + 1, k, r, state, chosen, budget) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        chosen[v] = None;
        state.leading.pop();
        state.shifted.truncate(state.shifted.len() - added);
    }
    Some(false)
}
