use std::collections::BTreeMap;
use std::fmt;

use bisys_bisystem::{vertex_name, Side};
use bisys_core::{display_word, FormalSum, Symbol, SymbolicMatrix};
use serde::Serialize;

use crate::SymbolicMatrixBisystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmbAxiom {
    Shapes,
    NoZeroLines,
    SimpleCells,
    /// No symbol repeats within a column.
    ColumnResolving,
    /// `M⁻_{l,l+1} M⁺_{l+1,l+2} ≃κ M⁺_{l,l+1} M⁻_{l+1,l+2}`.
    Local,
}

impl fmt::Display for SmbAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmbAxiom::Shapes => "(i) shapes",
            SmbAxiom::NoZeroLines => "(ii) no zero rows or columns",
            SmbAxiom::SimpleCells => "(iii) no multiple symbols in a cell",
            SmbAxiom::ColumnResolving => "(iv) no multiple symbols in a column",
            SmbAxiom::Local => "(v) local property",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmbViolation {
    Shape {
        side: Side,
        level: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    ZeroRow {
        side: Side,
        level: usize,
        row: usize,
    },
    ZeroColumn {
        side: Side,
        level: usize,
        col: usize,
    },
    RepeatedInCell {
        side: Side,
        level: usize,
        row: usize,
        col: usize,
        symbol: Symbol,
    },
    /// A term that is not a single symbol.
    NotASymbol {
        side: Side,
        level: usize,
        row: usize,
        col: usize,
        term: String,
    },
    RepeatedInColumn {
        side: Side,
        level: usize,
        col: usize,
        symbol: Symbol,
        rows: Vec<usize>,
    },
    /// `(M⁻M⁺)(row, col)` against `κ(M⁺M⁻)(row, col)`, `row` at `level`
    /// and `col` at `level + 2`.
    Local {
        level: usize,
        row: usize,
        col: usize,
        minus_plus: FormalSum,
        plus_minus: FormalSum,
    },
}

impl fmt::Display for SmbViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmbViolation::Shape { side, level, expected, found } => write!(
                f,
                "{side} matrix at level {level} is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            SmbViolation::ZeroRow { side, level, row } => {
                write!(f, "{side} matrix at level {level}: row {} is zero", row + 1)
            }
            SmbViolation::ZeroColumn { side, level, col } => {
                write!(f, "{side} matrix at level {level}: column {} is zero", col + 1)
            }
            SmbViolation::RepeatedInCell { side, level, row, col, symbol } => {
                write!(f, "{side} matrix at level {level}: cell ({},{}) repeats {symbol}", row + 1, col + 1)
            }
            SmbViolation::NotASymbol { side, level, row, col, term } => {
                write!(f, "{side} matrix at level {level}: cell ({},{}) has the term {term}", row + 1, col + 1)
            }
            SmbViolation::RepeatedInColumn { side, level, col, symbol, rows } => write!(
                f,
                "{side} matrix at level {level}: {symbol} appears in rows {:?} of column {}",
                rows.iter().map(|r| r + 1).collect::<Vec<_>>(),
                col + 1
            ),
            SmbViolation::Local { level, row, col, minus_plus, plus_minus } => write!(
                f,
                "({}, {}): M⁻M⁺ gives {minus_plus} but κ(M⁺M⁻) gives {plus_minus}",
                vertex_name(*level, *row),
                vertex_name(level + 2, *col)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmbVerdict {
    pub axiom: SmbAxiom,
    pub violations: Vec<SmbViolation>,
}

impl SmbVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmbValidationReport {
    pub depth: usize,
    pub verdicts: Vec<SmbVerdict>,
    pub standard: bool,
    pub common_alphabet: bool,
}

impl SmbValidationReport {
    pub fn is_valid(&self) -> bool {
        self.verdicts.iter().all(SmbVerdict::passed)
    }

    pub fn verdict(&self, axiom: SmbAxiom) -> &SmbVerdict {
        self.verdicts.iter().find(|v| v.axiom == axiom).expect("every axiom is reported")
    }
}

impl fmt::Display for SmbValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verified to depth {}", self.depth)?;
        for v in &self.verdicts {
            writeln!(f, "{}: {}", v.axiom, if v.passed() { "pass" } else { "FAIL" })?;
            for x in &v.violations {
                writeln!(f, "  {x}")?;
            }
        }
        writeln!(f, "standard: {}", if self.standard { "yes" } else { "no" })?;
        writeln!(f, "common alphabet: {}", if self.common_alphabet { "yes" } else { "no" })
    }
}

pub fn validate_smb(s: &SymbolicMatrixBisystem) -> SmbValidationReport {
    let verdicts = vec![
        SmbVerdict { axiom: SmbAxiom::Shapes, violations: shapes(s) },
        SmbVerdict { axiom: SmbAxiom::NoZeroLines, violations: zero_lines(s) },
        SmbVerdict { axiom: SmbAxiom::SimpleCells, violations: simple_cells(s) },
        SmbVerdict { axiom: SmbAxiom::ColumnResolving, violations: columns(s) },
        SmbVerdict { axiom: SmbAxiom::Local, violations: local(s) },
    ];
    SmbValidationReport {
        depth: s.depth(),
        verdicts,
        standard: s.is_standard(),
        common_alphabet: s.has_common_alphabet(),
    }
}

fn each_matrix(s: &SymbolicMatrixBisystem) -> impl Iterator<Item = (Side, usize, &SymbolicMatrix)> {
    (0..s.depth()).flat_map(move |l| [Side::Minus, Side::Plus].map(|side| (side, l, s.matrix(side, l))))
}

fn shapes(s: &SymbolicMatrixBisystem) -> Vec<SmbViolation> {
    let mut out = Vec::new();
    for l in 0..s.depth() {
        let rows = if l == 0 { s.minus(0).rows() } else { s.minus(l - 1).cols() };
        let expected = (rows, s.minus(l).cols());
        for side in [Side::Minus, Side::Plus] {
            let found = s.matrix(side, l).shape();
            if found != expected || found.0 == 0 || found.1 == 0 {
                out.push(SmbViolation::Shape { side, level: l, expected, found });
            }
        }
    }
    out
}

fn zero_lines(s: &SymbolicMatrixBisystem) -> Vec<SmbViolation> {
    let mut out = Vec::new();
    for (side, level, m) in each_matrix(s) {
        for row in 0..m.rows() {
            if m.row(row).iter().all(FormalSum::is_zero) {
                out.push(SmbViolation::ZeroRow { side, level, row });
            }
        }
        for col in 0..m.cols() {
            if (0..m.rows()).all(|i| m.get(i, col).is_zero()) {
                out.push(SmbViolation::ZeroColumn { side, level, col });
            }
        }
    }
    out
}

fn simple_cells(s: &SymbolicMatrixBisystem) -> Vec<SmbViolation> {
    let mut out = Vec::new();
    for (side, level, m) in each_matrix(s) {
        for (row, col, cell) in m.entries() {
            let mut seen = BTreeMap::<&Symbol, usize>::new();
            for w in cell.terms() {
                match w.as_slice() {
                    [x] => *seen.entry(x).or_default() += 1,
                    _ => out.push(SmbViolation::NotASymbol { side, level, row, col, term: display_word(w) }),
                }
            }
            out.extend(seen.into_iter().filter(|(_, n)| *n > 1).map(|(x, _)| SmbViolation::RepeatedInCell {
                side,
                level,
                row,
                col,
                symbol: x.clone(),
            }));
        }
    }
    out
}

fn columns(s: &SymbolicMatrixBisystem) -> Vec<SmbViolation> {
    let mut out = Vec::new();
    for (side, level, m) in each_matrix(s) {
        for col in 0..m.cols() {
            let mut rows_of = BTreeMap::<Symbol, Vec<usize>>::new();
            for row in 0..m.rows() {
                for x in m.get(row, col).symbols() {
                    rows_of.entry(x).or_default().push(row);
                }
            }
            out.extend(
                rows_of
                    .into_iter()
                    .filter(|(_, rows)| rows.len() > 1)
                    .map(|(symbol, rows)| SmbViolation::RepeatedInColumn { side, level, col, symbol, rows }),
            );
        }
    }
    out
}

fn local(s: &SymbolicMatrixBisystem) -> Vec<SmbViolation> {
    let mut out = Vec::new();
    for l in 0..s.depth().saturating_sub(1) {
        let left = s.minus(l).mul(s.plus(l + 1));
        let right = s.plus(l).mul(s.minus(l + 1)).and_then(|m| m.kappa());
        // Shape and term errors are reported by the other axioms.
        let (Ok(left), Ok(right)) = (left, right) else { continue };
        if left.shape() != right.shape() {
            continue;
        }
        for (row, col, x) in left.entries() {
            let y = right.get(row, col);
            if x != y {
                out.push(SmbViolation::Local { level: l, row, col, minus_plus: x.clone(), plus_minus: y.clone() });
            }
        }
    }
    out
}
