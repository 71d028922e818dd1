use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{CoreError, FormalSum, Result, Specification, Symbol};

/// A rectangular matrix of formal sums.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolicMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FormalSum>,
}

impl SymbolicMatrix {
    pub fn zero(rows: usize, cols: usize) -> SymbolicMatrix {
        SymbolicMatrix { rows, cols, entries: vec![FormalSum::zero(); rows * cols] }
    }

    /// The `n x n` matrix with `s` on the diagonal.
    pub fn identity(n: usize, s: &Symbol) -> SymbolicMatrix {
        let mut m = SymbolicMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, FormalSum::symbol(s.clone()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FormalSum>>) -> Result<SymbolicMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(CoreError::DimensionMismatch {
                left: format!("row of length {c}"),
                right: format!("row of length {}", bad.len()),
            });
        }
        Ok(SymbolicMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Parses rows of cell strings; panics on malformed input.
    pub fn parse_rows(rows: &[&[&str]]) -> SymbolicMatrix {
        let rows = rows.iter().map(|row| row.iter().map(|c| c.parse().expect("valid formal sum")).collect()).collect();
        SymbolicMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &FormalSum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: FormalSum) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut FormalSum {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FormalSum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FormalSum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FormalSum)> {
        let cols = self.cols;
        self.entries.iter().enumerate().map(move |(k, e)| (k / cols.max(1), k % cols.max(1), e))
    }

    /// Matrix product; entry `(i, j)` is the multiset sum over `k` of
    /// `self(i, k) * other(k, j)`.
    pub fn mul(&self, other: &SymbolicMatrix) -> Result<SymbolicMatrix> {
        if self.cols != other.rows {
            return Err(CoreError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = SymbolicMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut terms = Vec::new();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    terms.extend(a.product(other.get(k, j)).terms().iter().cloned());
                }
                out.set(i, j, FormalSum::from_words(terms));
            }
        }
        Ok(out)
    }

    pub fn try_map(&self, f: impl Fn(&FormalSum) -> Result<FormalSum>) -> Result<SymbolicMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(SymbolicMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn fuse(&self) -> Result<SymbolicMatrix> {
        self.try_map(FormalSum::fuse)
    }

    pub fn kappa(&self) -> Result<SymbolicMatrix> {
        self.try_map(FormalSum::kappa)
    }

    pub fn map_symbols(&self, spec: &Specification) -> Result<SymbolicMatrix> {
        self.try_map(|e| e.map(spec))
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        let mut out = SymbolicMatrix::zero(self.cols, self.rows);
        for (i, j, e) in self.entries() {
            out.set(j, i, e.clone());
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.entries.iter().flat_map(|e| e.symbols()).collect()
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SymbolicMatrix {
        let mut out = SymbolicMatrix::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FormalSum::is_zero)
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymbolicMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for SymbolicMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            rows: usize,
            cols: usize,
            cells: Vec<&'a [FormalSum]>,
        }
        Repr { rows: self.rows, cols: self.cols, cells: (0..self.rows).map(|i| self.row(i)).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymbolicMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            rows: usize,
            cols: usize,
            cells: Vec<Vec<FormalSum>>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.cells.len() != r.rows || r.cells.iter().any(|row| row.len() != r.cols) {
            return Err(serde::de::Error::custom(format!("cells do not form a {}x{} matrix", r.rows, r.cols)));
        }
        Ok(SymbolicMatrix { rows: r.rows, cols: r.cols, entries: r.cells.into_iter().flatten().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_prefixes() {
        let e = Symbol::atom("e");
        let b = SymbolicMatrix::parse_rows(&[&["a", "b + c"], &["0", "d"]]);
        let p = SymbolicMatrix::identity(2, &e).mul(&b).unwrap();
        assert_eq!(p, SymbolicMatrix::parse_rows(&[&["e*a", "e*b + e*c"], &["0", "e*d"]]));
    }

    #[test]
    fn dimension_mismatch() {
        let a = SymbolicMatrix::zero(2, 3);
        assert!(a.mul(&SymbolicMatrix::zero(2, 3)).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let m = SymbolicMatrix::parse_rows(&[&["a + b", "0", "(a.b)*c"]]);
        let text = serde_json::to_string(&m).unwrap();
        let back: SymbolicMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }
}
