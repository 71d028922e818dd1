use std::collections::BTreeSet;

use bisys_core::{Symbol, Word};

use crate::{BisystemError, LambdaGraphBisystem, Result, Side};

impl LambdaGraphBisystem {
    /// `F(v)` for every vertex, indexed `[level][vertex]`. A follower word
    /// lists the labels of a minus path from `v` down to `V_0`, top first.
    pub fn follower_sets(&self) -> Vec<Vec<BTreeSet<Word>>> {
        let mut out = vec![vec![BTreeSet::from([Word::new()]); self.level_size(0)]];
        for l in 0..self.depth() {
            let mut next = vec![BTreeSet::new(); self.level_size(l + 1)];
            for e in self.minus_edges(l) {
                for xi in &out[l][e.target] {
                    let mut w = Vec::with_capacity(l + 1);
                    w.push(e.label.clone());
                    w.extend(xi.iter().cloned());
                    next[e.source].insert(w);
                }
            }
            out.push(next);
        }
        out
    }

    /// `P(v)` for every vertex: labels of plus paths from `V_0` into `v`.
    pub fn predecessor_sets(&self) -> Vec<Vec<BTreeSet<Word>>> {
        let mut out = vec![vec![BTreeSet::from([Word::new()]); self.level_size(0)]];
        for l in 0..self.depth() {
            let mut next = vec![BTreeSet::new(); self.level_size(l + 1)];
            for e in self.plus_edges(l) {
                for mu in &out[l][e.source] {
                    let mut w = mu.clone();
                    w.push(e.label.clone());
                    next[e.target].insert(w);
                }
            }
            out.push(next);
        }
        out
    }

    pub fn follower_set(&self, level: usize, vertex: usize) -> Result<BTreeSet<Word>> {
        self.check_vertex(level, vertex)?;
        Ok(self.truncate_to(level).follower_sets().swap_remove(level).swap_remove(vertex))
    }

    pub fn predecessor_set(&self, level: usize, vertex: usize) -> Result<BTreeSet<Word>> {
        self.check_vertex(level, vertex)?;
        Ok(self.truncate_to(level).predecessor_sets().swap_remove(level).swap_remove(vertex))
    }

    /// `Σ₁⁻(v)`: labels of minus edges leaving `v` towards `V_{l-1}`.
    pub fn sigma1_minus(&self, level: usize, vertex: usize) -> BTreeSet<Symbol> {
        if level == 0 {
            return BTreeSet::new();
        }
        self.minus_edges(level - 1).iter().filter(|e| e.source == vertex).map(|e| e.label.clone()).collect()
    }

    /// `Σ₁⁺(v)`: labels of plus edges entering `v` from `V_{l-1}`.
    pub fn sigma1_plus(&self, level: usize, vertex: usize) -> BTreeSet<Symbol> {
        if level == 0 {
            return BTreeSet::new();
        }
        self.plus_edges(level - 1).iter().filter(|e| e.target == vertex).map(|e| e.label.clone()).collect()
    }

    fn check_vertex(&self, level: usize, vertex: usize) -> Result<()> {
        if level > self.depth() || vertex >= self.level_size(level) {
            return Err(BisystemError::Query(format!("no vertex {vertex} at level {level}")));
        }
        Ok(())
    }

    fn truncate_to(&self, level: usize) -> LambdaGraphBisystem {
        if level == 0 || level == self.depth() {
            self.clone()
        } else {
            self.truncate(level).expect("level within depth")
        }
    }
}

/// Label blocks of length `n` read along consecutive edges of one side,
/// starting at any level of the truncation. Minus paths are read from the
/// deepest edge upwards, matching the follower-word convention.
pub fn presented_words(b: &LambdaGraphBisystem, side: Side, n: usize) -> Result<Vec<Word>> {
    if n > b.depth() {
        return Err(BisystemError::Query(format!("word length {n} exceeds depth {}", b.depth())));
    }
    let mut out = BTreeSet::new();
    for start in 0..=b.depth() - n {
        let mut prefix = Vec::with_capacity(n);
        match side {
            Side::Plus => {
                let all: BTreeSet<usize> = (0..b.level_size(start)).collect();
                walk_plus(b, start, &all, n, &mut prefix, &mut out);
            }
            Side::Minus => {
                let top = start + n;
                let all: BTreeSet<usize> = (0..b.level_size(top)).collect();
                walk_minus(b, top, &all, n, &mut prefix, &mut out);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn walk_plus(
    b: &LambdaGraphBisystem,
    level: usize,
    current: &BTreeSet<usize>,
    remaining: usize,
    prefix: &mut Word,
    out: &mut BTreeSet<Word>,
) {
    if remaining == 0 {
        out.insert(prefix.clone());
        return;
    }
    for a in b.sigma_plus().iter() {
        let next: BTreeSet<usize> = b
            .plus_edges(level)
            .iter()
            .filter(|e| &e.label == a && current.contains(&e.source))
            .map(|e| e.target)
            .collect();
        if !next.is_empty() {
            prefix.push(a.clone());
            walk_plus(b, level + 1, &next, remaining - 1, prefix, out);
            prefix.pop();
        }
    }
}

fn walk_minus(
    b: &LambdaGraphBisystem,
    level: usize,
    current: &BTreeSet<usize>,
    remaining: usize,
    prefix: &mut Word,
    out: &mut BTreeSet<Word>,
) {
    if remaining == 0 {
        out.insert(prefix.clone());
        return;
    }
    for a in b.sigma_minus().iter() {
        let next: BTreeSet<usize> = b
            .minus_edges(level - 1)
            .iter()
            .filter(|e| &e.label == a && current.contains(&e.source))
            .map(|e| e.target)
            .collect();
        if !next.is_empty() {
            prefix.push(a.clone());
            walk_minus(b, level - 1, &next, remaining - 1, prefix, out);
            prefix.pop();
        }
    }
}
