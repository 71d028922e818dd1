use std::collections::BTreeSet;

use bisys_core::Symbol;

use crate::{Edge, LambdaGraphBisystem, Result};

/// A 0/1 tensor `A(i, s, j)` with `i` in `V_l` and `j` in `V_{l+1}`,
/// stored by its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTensor {
    pub rows: usize,
    pub cols: usize,
    support: BTreeSet<(usize, Symbol, usize)>,
}

impl LevelTensor {
    pub fn get(&self, i: usize, s: &Symbol, j: usize) -> u8 {
        u8::from(self.support.contains(&(i, s.clone(), j)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Symbol, usize)> {
        self.support.iter()
    }

    /// `Σ_s A(i, s, j)` as a `rows × cols` matrix.
    pub fn summed(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (i, _, j) in &self.support {
            m[*i][*j] += 1;
        }
        m
    }
}

/// Per level: `A⁻(i, β, j) = 1` iff a minus edge `v_j^{l+1} -> v_i^l`
/// carries `β`, and `A⁺(i, α, j) = 1` iff a plus edge `v_i^l -> v_j^{l+1}`
/// carries `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrices {
    pub minus: Vec<LevelTensor>,
    pub plus: Vec<LevelTensor>,
}

impl LambdaGraphBisystem {
    pub fn transition_matrices(&self) -> TransitionMatrices {
        let tensor = |l: usize, support: BTreeSet<(usize, Symbol, usize)>| LevelTensor {
            rows: self.level_size(l),
            cols: self.level_size(l + 1),
            support,
        };
        TransitionMatrices {
            minus: (0..self.depth())
                .map(|l| tensor(l, self.minus_edges(l).iter().map(|e| (e.target, e.label.clone(), e.source)).collect()))
                .collect(),
            plus: (0..self.depth())
                .map(|l| tensor(l, self.plus_edges(l).iter().map(|e| (e.source, e.label.clone(), e.target)).collect()))
                .collect(),
        }
    }

    /// Rebuilds the edge sets from tensors. Resolving edge sets have no
    /// parallel edges with equal labels, so nothing is lost.
    pub fn from_transition_matrices(t: &TransitionMatrices) -> Result<LambdaGraphBisystem> {
        let mut sizes: Vec<usize> = t.minus.iter().map(|x| x.rows).collect();
        sizes.push(t.minus.last().map_or(0, |x| x.cols));
        let minus = t
            .minus
            .iter()
            .map(|x| x.iter().map(|(i, s, j)| Edge { source: *j, target: *i, label: s.clone() }).collect())
            .collect();
        let plus = t
            .plus
            .iter()
            .map(|x| x.iter().map(|(i, s, j)| Edge { source: *i, target: *j, label: s.clone() }).collect())
            .collect();
        LambdaGraphBisystem::new(sizes, minus, plus)
    }
}
