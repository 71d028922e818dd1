use std::collections::BTreeMap;
use std::fmt;

use bisys_core::Symbol;
use serde::Serialize;

use crate::{vertex_name, BisystemError, Edge, LambdaGraphBisystem, Result, Side};

/// A λ-graph system truncated at depth `L`: a labelled Bratteli diagram
/// with edges `V_l -> V_{l+1}` and a map `ι: V_{l+1} -> V_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaGraphSystem {
    level_sizes: Vec<usize>,
    edges: Vec<Vec<Edge>>,
    iota: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LgsViolation {
    IotaNotSurjective {
        level: usize,
        vertex: usize,
    },
    NoSuccessor {
        level: usize,
        vertex: usize,
    },
    NoPredecessor {
        level: usize,
        vertex: usize,
    },
    NotLeftResolving {
        level: usize,
        vertex: usize,
        label: Symbol,
    },
    /// Labels of `E^ι(u, v)` and of `E_ι(u, v)`, `u` at `level`.
    Local {
        level: usize,
        upper: usize,
        lower: usize,
        via_iota: Vec<Symbol>,
        direct: Vec<Symbol>,
    },
}

impl fmt::Display for LgsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LgsViolation::IotaNotSurjective { level, vertex } => {
                write!(f, "{} is not in the image of ι", vertex_name(*level, *vertex))
            }
            LgsViolation::NoSuccessor { level, vertex } => {
                write!(f, "{} has no successor", vertex_name(*level, *vertex))
            }
            LgsViolation::NoPredecessor { level, vertex } => {
                write!(f, "{} has no predecessor", vertex_name(*level, *vertex))
            }
            LgsViolation::NotLeftResolving { level, vertex, label } => {
                write!(f, "{} is entered twice by label {label}", vertex_name(*level, *vertex))
            }
            LgsViolation::Local { level, upper, lower, via_iota, direct } => write!(
                f,
                "local property fails at ({}, {}): {:?} vs {:?}",
                vertex_name(*level, *upper),
                vertex_name(level + 2, *lower),
                via_iota.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                direct.iter().map(|s| s.to_string()).collect::<Vec<_>>()
            ),
        }
    }
}

impl LambdaGraphSystem {
    /// `iota[l][j]` is the index of `ι(v_j^{l+1})` in `V_l`.
    pub fn new(level_sizes: Vec<usize>, mut edges: Vec<Vec<Edge>>, iota: Vec<Vec<usize>>) -> Result<Self> {
        if level_sizes.len() < 2 {
            return Err(BisystemError::DepthZero);
        }
        let depth = level_sizes.len() - 1;
        if edges.len() != depth {
            return Err(BisystemError::LevelCount { what: "edge", expected: depth, found: edges.len() });
        }
        if iota.len() != depth {
            return Err(BisystemError::LevelCount { what: "iota", expected: depth, found: iota.len() });
        }
        if let Some(l) = level_sizes.iter().position(|&m| m == 0) {
            return Err(BisystemError::EmptyLevel(l));
        }
        for l in 0..depth {
            for e in &edges[l] {
                if e.source >= level_sizes[l] || e.target >= level_sizes[l + 1] {
                    return Err(BisystemError::VertexOutOfRange {
                        side: Side::Plus,
                        level: l,
                        source_vertex: e.source,
                        target_vertex: e.target,
                        label: e.label.to_string(),
                    });
                }
            }
            if iota[l].len() != level_sizes[l + 1] {
                return Err(BisystemError::LevelCount {
                    what: "iota entry",
                    expected: level_sizes[l + 1],
                    found: iota[l].len(),
                });
            }
            for (j, &i) in iota[l].iter().enumerate() {
                if i >= level_sizes[l] {
                    return Err(BisystemError::IotaOutOfRange { level: l + 1, vertex: j, image: i });
                }
            }
            edges[l].sort();
        }
        Ok(LambdaGraphSystem { level_sizes, edges, iota })
    }

    /// The finite graph of a nonnegative integer matrix, repeated at every
    /// level with `ι` the identity. Edges out of state `i` are labelled
    /// `i` (one-based) when the matrix is 0/1 and `i_k` otherwise, so that
    /// the presentation is left-resolving.
    pub fn from_matrix(a: &[Vec<u32>], depth: usize) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(BisystemError::Query("matrix must be square and non-empty".into()));
        }
        let simple = a.iter().flatten().all(|&x| x <= 1);
        let mut level = Vec::new();
        for (i, row) in a.iter().enumerate() {
            let mut k = 0;
            for (j, &count) in row.iter().enumerate() {
                for _ in 0..count {
                    k += 1;
                    let label = if simple { format!("{}", i + 1) } else { format!("{}_{}", i + 1, k) };
                    level.push(Edge::new(i, j, &label));
                }
            }
        }
        LambdaGraphSystem::new(vec![n; depth + 1], vec![level; depth], vec![(0..n).collect(); depth])
    }

    pub fn depth(&self) -> usize {
        self.level_sizes.len() - 1
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn edges(&self, l: usize) -> &[Edge] {
        &self.edges[l]
    }

    pub fn iota(&self, l: usize) -> &[usize] {
        &self.iota[l]
    }

    /// Checks the λ-graph system axioms to the stored depth: `ι` onto,
    /// successors and predecessors, left-resolving labels and the local
    /// property. Returns every violation found.
    pub fn check(&self) -> Vec<LgsViolation> {
        let depth = self.depth();
        let mut out = Vec::new();
        for l in 0..depth {
            let mut hit = vec![false; self.level_sizes[l]];
            for &i in &self.iota[l] {
                hit[i] = true;
            }
            out.extend(
                hit.iter()
                    .enumerate()
                    .filter(|(_, &h)| !h)
                    .map(|(v, _)| LgsViolation::IotaNotSurjective { level: l, vertex: v }),
            );
        }
        for l in 0..=depth {
            for v in 0..self.level_sizes[l] {
                if l < depth && !self.edges[l].iter().any(|e| e.source == v) {
                    out.push(LgsViolation::NoSuccessor { level: l, vertex: v });
                }
                if l > 0 && !self.edges[l - 1].iter().any(|e| e.target == v) {
                    out.push(LgsViolation::NoPredecessor { level: l, vertex: v });
                }
            }
        }
        for l in 0..depth {
            let mut seen = std::collections::BTreeSet::new();
            for e in &self.edges[l] {
                if !seen.insert((e.target, e.label.clone())) {
                    out.push(LgsViolation::NotLeftResolving { level: l + 1, vertex: e.target, label: e.label.clone() });
                }
            }
        }
        for l in 0..depth.saturating_sub(1) {
            let mut via_iota: BTreeMap<(usize, usize), Vec<Symbol>> = BTreeMap::new();
            for e in &self.edges[l + 1] {
                via_iota.entry((self.iota[l][e.source], e.target)).or_default().push(e.label.clone());
            }
            let mut direct: BTreeMap<(usize, usize), Vec<Symbol>> = BTreeMap::new();
            for e in &self.edges[l] {
                for (v, _) in self.iota[l + 1].iter().enumerate().filter(|(_, &i)| i == e.target) {
                    direct.entry((e.source, v)).or_default().push(e.label.clone());
                }
            }
            let keys: std::collections::BTreeSet<(usize, usize)> =
                via_iota.keys().chain(direct.keys()).copied().collect();
            for (u, v) in keys {
                let mut x = via_iota.get(&(u, v)).cloned().unwrap_or_default();
                let mut y = direct.get(&(u, v)).cloned().unwrap_or_default();
                x.sort();
                y.sort();
                if x != y {
                    out.push(LgsViolation::Local { level: l, upper: u, lower: v, via_iota: x, direct: y });
                }
            }
        }
        out
    }
}

/// The bisystem with the system's edges as the plus side and one minus
/// edge `v_j^{l+1} -> ι(v_j^{l+1})` labelled `ι` per vertex.
pub fn from_lambda_graph_system(lgs: &LambdaGraphSystem) -> Result<LambdaGraphBisystem> {
    if let Some(v) = lgs.check().into_iter().next() {
        return Err(BisystemError::NotLambdaGraphSystem(v));
    }
    let minus = (0..lgs.depth())
        .map(|l| lgs.iota(l).iter().enumerate().map(|(j, &i)| Edge::new(j, i, "ι")).collect())
        .collect();
    let plus = (0..lgs.depth()).map(|l| lgs.edges(l).to_vec()).collect();
    LambdaGraphBisystem::new(lgs.level_sizes().to_vec(), minus, plus)
}
