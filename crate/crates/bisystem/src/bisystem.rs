use std::fmt;

use bisys_core::{Alphabet, Symbol};
use serde::{Deserialize, Serialize};

use crate::{BisystemError, Result};

/// A labelled edge between adjacent levels. For a minus edge stored at
/// level `l` the source lies in `V_{l+1}` and the target in `V_l`; for a
/// plus edge the source lies in `V_l` and the target in `V_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Symbol,
}

impl Edge {
    pub fn new(source: usize, target: usize, label: &str) -> Edge {
        Edge { source, target, label: Symbol::atom(label) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

/// A λ-graph bisystem truncated at depth `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGraphBisystem {
    level_sizes: Vec<usize>,
    minus: Vec<Vec<Edge>>,
    plus: Vec<Vec<Edge>>,
    sigma_minus: Alphabet,
    sigma_plus: Alphabet,
}

impl LambdaGraphBisystem {
    /// Builds a bisystem from `L + 1` level sizes and `L` edge levels per
    /// side. Endpoints are range checked; the axioms are left to
    /// [`crate::validate`]. Edges are kept as a sorted multiset.
    pub fn new(level_sizes: Vec<usize>, mut minus: Vec<Vec<Edge>>, mut plus: Vec<Vec<Edge>>) -> Result<Self> {
        if level_sizes.len() < 2 {
            return Err(BisystemError::DepthZero);
        }
        let depth = level_sizes.len() - 1;
        for (what, edges) in [("minus edge", &minus), ("plus edge", &plus)] {
            if edges.len() != depth {
                return Err(BisystemError::LevelCount { what, expected: depth, found: edges.len() });
            }
        }
        if let Some(l) = level_sizes.iter().position(|&m| m == 0) {
            return Err(BisystemError::EmptyLevel(l));
        }
        for l in 0..depth {
            for e in &minus[l] {
                if e.source >= level_sizes[l + 1] || e.target >= level_sizes[l] {
                    return Err(out_of_range(Side::Minus, l, e));
                }
            }
            for e in &plus[l] {
                if e.source >= level_sizes[l] || e.target >= level_sizes[l + 1] {
                    return Err(out_of_range(Side::Plus, l, e));
                }
            }
            minus[l].sort();
            plus[l].sort();
        }
        let sigma_minus = Alphabet::collect(minus.iter().flatten().map(|e| e.label.clone()))?;
        let sigma_plus = Alphabet::collect(plus.iter().flatten().map(|e| e.label.clone()))?;
        Ok(LambdaGraphBisystem { level_sizes, minus, plus, sigma_minus, sigma_plus })
    }

    pub fn depth(&self) -> usize {
        self.level_sizes.len() - 1
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn level_size(&self, l: usize) -> usize {
        self.level_sizes[l]
    }

    /// Minus edges from `V_{l+1}` to `V_l`.
    pub fn minus_edges(&self, l: usize) -> &[Edge] {
        &self.minus[l]
    }

    /// Plus edges from `V_l` to `V_{l+1}`.
    pub fn plus_edges(&self, l: usize) -> &[Edge] {
        &self.plus[l]
    }

    pub fn edges(&self, side: Side, l: usize) -> &[Edge] {
        match side {
            Side::Minus => &self.minus[l],
            Side::Plus => &self.plus[l],
        }
    }

    pub fn sigma_minus(&self) -> &Alphabet {
        &self.sigma_minus
    }

    pub fn sigma_plus(&self) -> &Alphabet {
        &self.sigma_plus
    }

    pub fn alphabet(&self, side: Side) -> &Alphabet {
        match side {
            Side::Minus => &self.sigma_minus,
            Side::Plus => &self.sigma_plus,
        }
    }

    /// `|V_0| = 1`.
    pub fn is_standard(&self) -> bool {
        self.level_sizes[0] == 1
    }

    pub fn has_common_alphabet(&self) -> bool {
        self.sigma_minus == self.sigma_plus
    }

    /// Reverses every edge and swaps the roles of the two diagrams.
    pub fn transpose(&self) -> LambdaGraphBisystem {
        let flip = |levels: &Vec<Vec<Edge>>| -> Vec<Vec<Edge>> {
            levels
                .iter()
                .map(|es| {
                    es.iter().map(|e| Edge { source: e.target, target: e.source, label: e.label.clone() }).collect()
                })
                .collect()
        };
        LambdaGraphBisystem::new(self.level_sizes.clone(), flip(&self.plus), flip(&self.minus))
            .expect("transpose keeps ranges and alphabets")
    }

    /// The first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<LambdaGraphBisystem> {
        if depth == 0 || depth > self.depth() {
            return Err(BisystemError::Query(format!("cannot truncate depth {} to {depth}", self.depth())));
        }
        LambdaGraphBisystem::new(
            self.level_sizes[..=depth].to_vec(),
            self.minus[..depth].to_vec(),
            self.plus[..depth].to_vec(),
        )
    }
}

fn out_of_range(side: Side, level: usize, e: &Edge) -> BisystemError {
    BisystemError::VertexOutOfRange {
        side,
        level,
        source_vertex: e.source,
        target_vertex: e.target,
        label: e.label.to_string(),
    }
}
