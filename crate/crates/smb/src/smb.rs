use std::collections::BTreeSet;

use bisys_bisystem::Side;
use bisys_core::{Symbol, SymbolicMatrix};
use serde::{Deserialize, Serialize};

use crate::{Result, SmbError};

/// Matrices for levels `0..L`. Shapes are not forced to chain here so that
/// malformed input can be reported by [`crate::validate_smb`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicMatrixBisystem {
    minus: Vec<SymbolicMatrix>,
    plus: Vec<SymbolicMatrix>,
}

impl SymbolicMatrixBisystem {
    pub fn new(minus: Vec<SymbolicMatrix>, plus: Vec<SymbolicMatrix>) -> Result<Self> {
        if minus.is_empty() {
            return Err(SmbError::DepthZero);
        }
        if minus.len() != plus.len() {
            return Err(SmbError::LevelCount { minus: minus.len(), plus: plus.len() });
        }
        Ok(SymbolicMatrixBisystem { minus, plus })
    }

    pub fn depth(&self) -> usize {
        self.minus.len()
    }

    pub fn minus(&self, l: usize) -> &SymbolicMatrix {
        &self.minus[l]
    }

    pub fn plus(&self, l: usize) -> &SymbolicMatrix {
        &self.plus[l]
    }

    pub fn matrix(&self, side: Side, l: usize) -> &SymbolicMatrix {
        match side {
            Side::Minus => &self.minus[l],
            Side::Plus => &self.plus[l],
        }
    }

    pub fn minus_matrices(&self) -> &[SymbolicMatrix] {
        &self.minus
    }

    pub fn plus_matrices(&self) -> &[SymbolicMatrix] {
        &self.plus
    }

    /// `m(0), …, m(L)` when every shape chains; the first mismatch otherwise.
    pub fn level_sizes(&self) -> Result<Vec<usize>> {
        let mut sizes = vec![self.minus[0].rows()];
        for l in 0..self.depth() {
            let expected = (sizes[l], self.minus[l].cols());
            for side in [Side::Minus, Side::Plus] {
                let found = self.matrix(side, l).shape();
                if found != expected {
                    return Err(SmbError::Shape { side, level: l, expected, found });
                }
            }
            sizes.push(expected.1);
        }
        Ok(sizes)
    }

    pub fn symbols(&self, side: Side) -> BTreeSet<Symbol> {
        let ms = match side {
            Side::Minus => &self.minus,
            Side::Plus => &self.plus,
        };
        ms.iter().flat_map(SymbolicMatrix::symbols).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.minus[0].rows() == 1
    }

    pub fn has_common_alphabet(&self) -> bool {
        self.symbols(Side::Minus) == self.symbols(Side::Plus)
    }

    /// The first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(SmbError::DepthZero);
        }
        let d = depth.min(self.depth());
        SymbolicMatrixBisystem::new(self.minus[..d].to_vec(), self.plus[..d].to_vec())
    }
}
