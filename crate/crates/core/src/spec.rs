use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::{CoreError, FormalSum, Result, Symbol, SymbolicMatrix};

/// An injective map between symbol sets.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Specification {
    map: BTreeMap<Symbol, Symbol>,
}

impl Specification {
    pub fn new(pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Result<Specification> {
        let mut map = BTreeMap::new();
        let mut image: BTreeMap<Symbol, Symbol> = BTreeMap::new();
        for (a, b) in pairs {
            if let Some(old) = map.get(&a) {
                if old != &b {
                    return Err(CoreError::NotInjective(a.to_string(), a.to_string()));
                }
                continue;
            }
            if let Some(other) = image.insert(b.clone(), a.clone()) {
                return Err(CoreError::NotInjective(other.to_string(), a.to_string()));
            }
            map.insert(a, b);
        }
        Ok(Specification { map })
    }

    pub fn identity(symbols: impl IntoIterator<Item = Symbol>) -> Specification {
        Specification { map: symbols.into_iter().map(|s| (s.clone(), s)).collect() }
    }

    pub fn get(&self, s: &Symbol) -> Option<&Symbol> {
        self.map.get(s)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.map.iter()
    }

    pub fn domain(&self) -> BTreeSet<Symbol> {
        self.map.keys().cloned().collect()
    }

    pub fn image(&self) -> BTreeSet<Symbol> {
        self.map.values().cloned().collect()
    }

    pub fn inverse(&self) -> Specification {
        Specification { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// `other` after `self`, on the symbols where both are defined.
    pub fn then(&self, other: &Specification) -> Specification {
        Specification {
            map: self.map.iter().filter_map(|(a, b)| other.get(b).map(|c| (a.clone(), c.clone()))).collect(),
        }
    }

    /// Union of two specifications; fails if the result is not an
    /// injective function.
    pub fn union(&self, other: &Specification) -> Result<Specification> {
        Specification::new(self.iter().chain(other.iter()).map(|(a, b)| (a.clone(), b.clone())))
    }
}

impl fmt::Debug for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter()).finish()
    }
}

impl<'de> Deserialize<'de> for Specification {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<Symbol, Symbol>::deserialize(deserializer)?;
        Specification::new(map).map_err(serde::de::Error::custom)
    }
}

/// Why two matrices failed to be specified equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Shape { left: (usize, usize), right: (usize, usize) },
    Undefined { symbol: Symbol },
    Cell { row: usize, col: usize, mapped: FormalSum, expected: FormalSum },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Shape { left, right } => {
                write!(f, "shape {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            Mismatch::Undefined { symbol } => write!(f, "specification undefined on `{symbol}`"),
            Mismatch::Cell { row, col, mapped, expected } => {
                write!(f, "cell ({row},{col}): `{mapped}` vs `{expected}`")
            }
        }
    }
}

/// Checks that substituting every symbol of `a` through `spec` yields `b`.
pub fn specified_equivalent(
    a: &SymbolicMatrix,
    b: &SymbolicMatrix,
    spec: &Specification,
) -> std::result::Result<(), Mismatch> {
    if a.shape() != b.shape() {
        return Err(Mismatch::Shape { left: a.shape(), right: b.shape() });
    }
    for (i, j, cell) in a.entries() {
        let mapped = cell.map(spec).map_err(|e| match e {
            CoreError::Undefined(_) => Mismatch::Undefined {
                symbol: cell.symbols().into_iter().find(|s| spec.get(s).is_none()).expect("undefined"),
            },
            _ => unreachable!("map only fails on undefined symbols"),
        })?;
        if &mapped != b.get(i, j) {
            return Err(Mismatch::Cell { row: i, col: j, mapped, expected: b.get(i, j).clone() });
        }
    }
    Ok(())
}

type Profile = BTreeMap<(usize, usize, usize), usize>;

fn profiles(m: &SymbolicMatrix) -> BTreeMap<Symbol, Profile> {
    let mut out: BTreeMap<Symbol, Profile> = BTreeMap::new();
    for (i, j, cell) in m.entries() {
        let cell_index = i * m.cols() + j;
        for w in cell.terms() {
            for (pos, s) in w.iter().enumerate() {
                *out.entry(s.clone()).or_default().entry((cell_index, w.len(), pos)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Searches for a specification making `a` and `b` specified equivalent.
///
/// Candidates are restricted to symbols with identical occurrence profiles
/// (cell, term length, position), then assigned by backtracking in symbol
/// order, so the answer is deterministic.
pub fn find_specification(a: &SymbolicMatrix, b: &SymbolicMatrix) -> Option<Specification> {
    if a.shape() != b.shape() {
        return None;
    }
    let pa = profiles(a);
    let pb = profiles(b);
    if pa.len() != pb.len() {
        return None;
    }
    let sources: Vec<(&Symbol, Vec<&Symbol>)> =
        pa.iter().map(|(s, prof)| (s, pb.iter().filter(|(_, q)| *q == prof).map(|(t, _)| t).collect())).collect();
    if sources.iter().any(|(_, c)| c.is_empty()) {
        return None;
    }
    let mut chosen: Vec<&Symbol> = Vec::with_capacity(sources.len());
    let mut used = BTreeSet::new();
    search(&sources, &mut chosen, &mut used, a, b)
}

fn search<'a>(
    sources: &[(&'a Symbol, Vec<&'a Symbol>)],
    chosen: &mut Vec<&'a Symbol>,
    used: &mut BTreeSet<&'a Symbol>,
    a: &SymbolicMatrix,
    b: &SymbolicMatrix,
) -> Option<Specification> {
    let k = chosen.len();
    if k == sources.len() {
        let spec =
            Specification::new(sources.iter().zip(chosen.iter()).map(|((s, _), t)| ((*s).clone(), (*t).clone())))
                .ok()?;
        return specified_equivalent(a, b, &spec).ok().map(|_| spec);
    }
    for &t in &sources[k].1 {
        if used.insert(t) {
            chosen.push(t);
            if let Some(spec) = search(sources, chosen, used, a, b) {
                return Some(spec);
            }
            chosen.pop();
            used.remove(t);
        }
    }
    None
}
