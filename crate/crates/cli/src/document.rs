//! JSON documents read and written by the command line.
//!
//! Every document carries `schema_version` and a `kind`. Vertex and state
//! indices are one-based. Level data may stop early and name a
//! `repeat_from` level: later levels cycle through the entries from that
//! level on.

use std::collections::BTreeSet;

use bisys_bisystem::{Edge, LambdaGraphBisystem, LambdaGraphSystem};
use bisys_core::{Alphabet, FormalSum, Specification, Symbol, SymbolicMatrix, Word};
use bisys_equivalence::{PsseWitness, SseWitness};
use bisys_smb::SymbolicMatrixBisystem;
use bisys_subshift::{GraphEdge, LabeledGraph, SftMatrix, SubshiftPresentation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Depth used when neither the command line nor the document gives one.
pub const DEFAULT_DEPTH: usize = 6;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}, expected {SCHEMA_VERSION}")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> DocumentError {
    DocumentError::Invalid(msg.into())
}

/// `[source, target, label]` with one-based vertices.
pub type EdgeDoc = (usize, usize, Symbol);

/// A symbolic matrix as rows of formal sums, or with an explicit shape
/// when it has no rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Rows(Vec<Vec<FormalSum>>),
    Shaped(SymbolicMatrix),
}

impl MatrixDoc {
    pub fn from_matrix(m: &SymbolicMatrix) -> Self {
        if m.rows() == 0 {
            MatrixDoc::Shaped(m.clone())
        } else {
            MatrixDoc::Rows((0..m.rows()).map(|i| m.row(i).to_vec()).collect())
        }
    }

    pub fn to_matrix(&self) -> Result<SymbolicMatrix, DocumentError> {
        match self {
            MatrixDoc::Rows(rows) => SymbolicMatrix::from_rows(rows.clone()).map_err(|e| invalid(e.to_string())),
            MatrixDoc::Shaped(m) => Ok(m.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftDoc {
    /// Defaults to `1..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<Symbol>>,
    pub matrix: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoficDoc {
    pub states: usize,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForbiddenDoc {
    pub alphabet: Vec<Symbol>,
    pub words: Vec<Word>,
}

/// Exactly one of `sft`, `sofic` and `forbidden`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubshiftDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sft: Option<SftDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sofic: Option<SoficDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<ForbiddenDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisystemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// `m(0), m(1), …`, one more than the number of edge levels.
    pub sizes: Vec<usize>,
    /// Minus edges `[v in V_{l+1}, u in V_l, label]` per level.
    pub minus: Vec<Vec<EdgeDoc>>,
    /// Plus edges `[u in V_l, v in V_{l+1}, label]` per level.
    pub plus: Vec<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
}

/// Either `matrix`, the graph of a nonnegative integer matrix at every
/// level, or explicit `sizes`, `edges` and `iota`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LgsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Vec<EdgeDoc>>>,
    /// `iota[l][j]` is `ι(v_{j+1}^{l+1})`, one-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmbDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub minus: Vec<MatrixDoc>,
    pub plus: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
}

/// Families indexed `0..2L`; `repeat_from` counts family entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsseDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub c: BTreeSet<Symbol>,
    pub d: BTreeSet<Symbol>,
    pub phi_m: Specification,
    pub phi_n: Specification,
    pub p: Vec<MatrixDoc>,
    pub q: Vec<MatrixDoc>,
    pub x: Vec<MatrixDoc>,
    pub y: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SseDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub c: BTreeSet<Symbol>,
    pub d: BTreeSet<Symbol>,
    pub phi_1: Specification,
    pub phi_2: Specification,
    pub phi_c_plus: Specification,
    pub phi_c_minus: Specification,
    pub phi_d_plus: Specification,
    pub phi_d_minus: Specification,
    pub h: Vec<MatrixDoc>,
    pub k: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Subshift(SubshiftDoc),
    Bisystem(BisystemDoc),
    LambdaGraphSystem(LgsDoc),
    Smb(SmbDoc),
    PsseWitness(PsseDoc),
    SseWitness(SseDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Subshift(_) => "subshift",
            Document::Bisystem(_) => "bisystem",
            Document::LambdaGraphSystem(_) => "lambda_graph_system",
            Document::Smb(_) => "smb",
            Document::PsseWitness(_) => "psse_witness",
            Document::SseWitness(_) => "sse_witness",
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    #[serde(flatten)]
    document: &'a Document,
}

/// Parses a document. Syntax errors carry a line and column.
pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    #[derive(Deserialize)]
    struct Version {
        schema_version: Option<u32>,
    }
    let v: Version = serde_json::from_str(text)?;
    match v.schema_version {
        Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(DocumentError::Version(other)),
        None => return Err(invalid("missing schema_version")),
    }
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(map) = value.as_object_mut() {
        map.remove("schema_version");
    }
    Ok(serde_json::from_value(value)?)
}

/// Pretty JSON with a trailing newline; field order is fixed, so equal
/// documents give equal bytes.
pub fn emit_document(document: &Document) -> String {
    let text = serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, document })
        .expect("documents serialize");
    let mut s = inline_leaf_arrays(&text);
    s.push('\n');
    s
}

/// Puts every array holding only scalars on one line, so edges and matrix
/// rows read as `[1, 2, "a"]`.
pub fn inline_leaf_arrays(pretty: &str) -> String {
    let chars: Vec<char> = pretty.chars().collect();
    let mut out = String::with_capacity(pretty.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '"' {
            let end = string_end(&chars, i);
            out.extend(&chars[i..end]);
            i = end;
            continue;
        }
        if chars[i] == '[' {
            if let Some(end) = leaf_end(&chars, i) {
                let mut items = Vec::new();
                let mut current = String::new();
                let mut k = i + 1;
                while k < end {
                    match chars[k] {
                        '"' => {
                            let e = string_end(&chars, k);
                            current.extend(&chars[k..e]);
                            k = e;
                            continue;
                        }
                        ',' => items.push(std::mem::take(&mut current)),
                        c if c.is_whitespace() => {}
                        c => current.push(c),
                    }
                    k += 1;
                }
                if !current.is_empty() {
                    items.push(current);
                }
                out.push('[');
                out.push_str(&items.join(", "));
                out.push(']');
                i = end + 1;
                continue;
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

/// Index just past the string literal starting at `start`.
fn string_end(chars: &[char], start: usize) -> usize {
    let mut k = start + 1;
    while k < chars.len() {
        match chars[k] {
            '\\' => k += 2,
            '"' => return k + 1,
            _ => k += 1,
        }
    }
    chars.len()
}

/// The closing bracket of the array at `start` when it nests nothing.
fn leaf_end(chars: &[char], start: usize) -> Option<usize> {
    let mut k = start + 1;
    while k < chars.len() {
        match chars[k] {
            '"' => k = string_end(chars, k),
            '[' | '{' => return None,
            ']' => return Some(k),
            _ => k += 1,
        }
    }
    None
}

/// Entry `i` of a list whose entries from `repeat_from` on repeat.
fn cyclic<T: Clone>(items: &[T], repeat_from: Option<usize>, len: usize, what: &str) -> Result<Vec<T>, DocumentError> {
    if len <= items.len() {
        return Ok(items[..len].to_vec());
    }
    let Some(r) = repeat_from else {
        return Err(invalid(format!(
            "{what} lists {} levels but {len} are needed and there is no repeat_from",
            items.len()
        )));
    };
    if r >= items.len() {
        return Err(invalid(format!("repeat_from {r} is beyond the {} listed {what} levels", items.len())));
    }
    let period = items.len() - r;
    Ok((0..len).map(|i| if i < items.len() { items[i].clone() } else { items[r + (i - r) % period].clone() }).collect())
}

/// Chooses the depth: an explicit request must be available, otherwise
/// the document's own depth or the default, cut to what the document
/// lists when it does not repeat.
pub fn resolve_depth(
    requested: Option<usize>,
    declared: Option<usize>,
    listed: usize,
    repeats: bool,
) -> Result<usize, DocumentError> {
    let depth = match requested {
        Some(d) => {
            if !repeats && d > listed {
                return Err(invalid(format!("depth {d} requested but the document lists {listed} levels")));
            }
            d
        }
        None => {
            let d = declared.unwrap_or(DEFAULT_DEPTH);
            if repeats {
                d
            } else {
                d.min(listed)
            }
        }
    };
    if depth == 0 {
        return Err(invalid("depth must be at least 1"));
    }
    Ok(depth)
}

fn edges_from(doc: &[EdgeDoc], level: usize) -> Result<Vec<Edge>, DocumentError> {
    doc.iter()
        .map(|(s, t, label)| {
            if *s == 0 || *t == 0 {
                return Err(invalid(format!("level {level}: vertices are numbered from 1")));
            }
            Ok(Edge { source: s - 1, target: t - 1, label: label.clone() })
        })
        .collect()
}

fn edges_to(edges: &[Edge]) -> Vec<EdgeDoc> {
    edges.iter().map(|e| (e.source + 1, e.target + 1, e.label.clone())).collect()
}

/// Level sizes `0..=depth` from `sizes`, whose tail repeats with the edge
/// levels.
fn expand_sizes(
    sizes: &[usize],
    steps: usize,
    repeat_from: Option<usize>,
    depth: usize,
) -> Result<Vec<usize>, DocumentError> {
    if sizes.len() != steps + 1 {
        return Err(invalid(format!("{} sizes given for {steps} edge levels", sizes.len())));
    }
    if depth <= steps {
        return Ok(sizes[..=depth].to_vec());
    }
    if let Some(r) = repeat_from {
        if r < steps && sizes[steps] != sizes[r] {
            return Err(invalid(format!(
                "repeat_from {r}: size {} of the last level differs from size {} of level {r}",
                sizes[steps], sizes[r]
            )));
        }
    }
    cyclic(&sizes[..steps], repeat_from, depth + 1, "size")
}

impl SubshiftDoc {
    pub fn presentation(&self) -> Result<SubshiftPresentation, DocumentError> {
        let err = |e: bisys_subshift::SubshiftError| invalid(e.to_string());
        match (&self.sft, &self.sofic, &self.forbidden) {
            (Some(s), None, None) => {
                let m = match &s.symbols {
                    Some(symbols) => SftMatrix::new(symbols.clone(), s.matrix.clone()),
                    None => SftMatrix::numbered(s.matrix.clone()),
                };
                Ok(SubshiftPresentation::Sft(m.map_err(err)?))
            }
            (None, Some(g), None) => {
                let mut edges = Vec::with_capacity(g.edges.len());
                for (s, t, label) in &g.edges {
                    if *s == 0 || *t == 0 {
                        return Err(invalid("states are numbered from 1"));
                    }
                    edges.push(GraphEdge { source: s - 1, target: t - 1, label: label.clone() });
                }
                Ok(SubshiftPresentation::Sofic(LabeledGraph::new(g.states, edges).map_err(err)?))
            }
            (None, None, Some(f)) => Ok(SubshiftPresentation::Forbidden {
                alphabet: Alphabet::new(f.alphabet.iter().cloned()).map_err(|e| invalid(e.to_string()))?,
                words: f.words.clone(),
            }),
            _ => Err(invalid("a subshift needs exactly one of sft, sofic or forbidden")),
        }
    }

    pub fn from_presentation(p: &SubshiftPresentation, name: Option<String>) -> Self {
        let mut doc = SubshiftDoc { name, sft: None, sofic: None, forbidden: None };
        match p {
            SubshiftPresentation::Sft(a) => {
                doc.sft = Some(SftDoc { symbols: Some(a.symbols().to_vec()), matrix: a.entries().to_vec() })
            }
            SubshiftPresentation::Sofic(g) => {
                doc.sofic = Some(SoficDoc {
                    states: g.states(),
                    edges: g.edges().iter().map(|e| (e.source + 1, e.target + 1, e.label.clone())).collect(),
                })
            }
            SubshiftPresentation::Forbidden { alphabet, words } => {
                doc.forbidden =
                    Some(ForbiddenDoc { alphabet: alphabet.iter().cloned().collect(), words: words.clone() })
            }
        }
        doc
    }
}

impl BisystemDoc {
    pub fn depth_for(&self, requested: Option<usize>) -> Result<usize, DocumentError> {
        resolve_depth(requested, self.depth, self.minus.len().min(self.plus.len()), self.repeat_from.is_some())
    }

    pub fn to_bisystem(&self, requested: Option<usize>) -> Result<LambdaGraphBisystem, DocumentError> {
        if self.minus.len() != self.plus.len() {
            return Err(invalid(format!("{} minus levels but {} plus levels", self.minus.len(), self.plus.len())));
        }
        let depth = self.depth_for(requested)?;
        let steps = self.minus.len();
        let sizes = expand_sizes(&self.sizes, steps, self.repeat_from, depth)?;
        let minus = cyclic(&self.minus, self.repeat_from, depth, "minus edge")?;
        let plus = cyclic(&self.plus, self.repeat_from, depth, "plus edge")?;
        let minus = minus.iter().enumerate().map(|(l, es)| edges_from(es, l)).collect::<Result<_, _>>()?;
        let plus = plus.iter().enumerate().map(|(l, es)| edges_from(es, l)).collect::<Result<_, _>>()?;
        LambdaGraphBisystem::new(sizes, minus, plus).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_bisystem(b: &LambdaGraphBisystem, name: Option<String>) -> Self {
        BisystemDoc {
            name,
            depth: Some(b.depth()),
            sizes: b.level_sizes().to_vec(),
            minus: (0..b.depth()).map(|l| edges_to(b.minus_edges(l))).collect(),
            plus: (0..b.depth()).map(|l| edges_to(b.plus_edges(l))).collect(),
            repeat_from: None,
        }
    }
}

impl LgsDoc {
    pub fn to_system(&self, requested: Option<usize>) -> Result<LambdaGraphSystem, DocumentError> {
        let err = |e: bisys_bisystem::BisystemError| invalid(e.to_string());
        match (&self.matrix, &self.sizes, &self.edges, &self.iota) {
            (Some(a), None, None, None) => {
                let depth = resolve_depth(requested, self.depth, usize::MAX, true)?;
                LambdaGraphSystem::from_matrix(a, depth).map_err(err)
            }
            (None, Some(sizes), Some(edges), Some(iota)) => {
                if edges.len() != iota.len() {
                    return Err(invalid(format!("{} edge levels but {} ι levels", edges.len(), iota.len())));
                }
                let depth = resolve_depth(requested, self.depth, edges.len(), self.repeat_from.is_some())?;
                let sizes = expand_sizes(sizes, edges.len(), self.repeat_from, depth)?;
                let edges = cyclic(edges, self.repeat_from, depth, "edge")?;
                let edges = edges.iter().enumerate().map(|(l, es)| edges_from(es, l)).collect::<Result<_, _>>()?;
                let iota = cyclic(iota, self.repeat_from, depth, "ι")?
                    .into_iter()
                    .map(|level| {
                        level
                            .into_iter()
                            .map(|i| i.checked_sub(1).ok_or_else(|| invalid("ι targets are numbered from 1")))
                            .collect()
                    })
                    .collect::<Result<_, _>>()?;
                LambdaGraphSystem::new(sizes, edges, iota).map_err(err)
            }
            _ => Err(invalid("a lambda_graph_system needs either matrix or all of sizes, edges and iota")),
        }
    }
}

fn matrices(docs: &[MatrixDoc]) -> Result<Vec<SymbolicMatrix>, DocumentError> {
    docs.iter().map(MatrixDoc::to_matrix).collect()
}

fn matrix_docs(ms: &[SymbolicMatrix]) -> Vec<MatrixDoc> {
    ms.iter().map(MatrixDoc::from_matrix).collect()
}

impl SmbDoc {
    pub fn depth_for(&self, requested: Option<usize>) -> Result<usize, DocumentError> {
        resolve_depth(requested, self.depth, self.minus.len().min(self.plus.len()), self.repeat_from.is_some())
    }

    pub fn to_smb(&self, requested: Option<usize>) -> Result<SymbolicMatrixBisystem, DocumentError> {
        if self.minus.len() != self.plus.len() {
            return Err(invalid(format!("{} minus levels but {} plus levels", self.minus.len(), self.plus.len())));
        }
        let depth = self.depth_for(requested)?;
        let minus = matrices(&cyclic(&self.minus, self.repeat_from, depth, "minus matrix")?)?;
        let plus = matrices(&cyclic(&self.plus, self.repeat_from, depth, "plus matrix")?)?;
        SymbolicMatrixBisystem::new(minus, plus).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_smb(s: &SymbolicMatrixBisystem, name: Option<String>) -> Self {
        SmbDoc {
            name,
            depth: Some(s.depth()),
            minus: matrix_docs(s.minus_matrices()),
            plus: matrix_docs(s.plus_matrices()),
            repeat_from: None,
        }
    }
}

impl PsseDoc {
    /// Levels listed, before any repetition.
    pub fn listed_depth(&self) -> usize {
        [&self.p, &self.q, &self.x, &self.y].iter().map(|f| f.len()).min().unwrap_or(0) / 2
    }

    pub fn to_witness(&self, depth: usize) -> Result<PsseWitness, DocumentError> {
        let n = 2 * depth;
        let family = |f: &[MatrixDoc], what: &str| matrices(&cyclic(f, self.repeat_from, n, what)?);
        Ok(PsseWitness {
            c: self.c.clone(),
            d: self.d.clone(),
            phi_m: self.phi_m.clone(),
            phi_n: self.phi_n.clone(),
            p: family(&self.p, "P")?,
            q: family(&self.q, "Q")?,
            x: family(&self.x, "X")?,
            y: family(&self.y, "Y")?,
        })
    }

    pub fn from_witness(w: &PsseWitness, name: Option<String>) -> Self {
        PsseDoc {
            name,
            c: w.c.clone(),
            d: w.d.clone(),
            phi_m: w.phi_m.clone(),
            phi_n: w.phi_n.clone(),
            p: matrix_docs(&w.p),
            q: matrix_docs(&w.q),
            x: matrix_docs(&w.x),
            y: matrix_docs(&w.y),
            repeat_from: None,
        }
    }
}

impl SseDoc {
    pub fn listed_depth(&self) -> usize {
        self.h.len().min(self.k.len())
    }

    pub fn to_witness(&self, depth: usize) -> Result<SseWitness, DocumentError> {
        Ok(SseWitness {
            c: self.c.clone(),
            d: self.d.clone(),
            phi_1: self.phi_1.clone(),
            phi_2: self.phi_2.clone(),
            phi_c_plus: self.phi_c_plus.clone(),
            phi_c_minus: self.phi_c_minus.clone(),
            phi_d_plus: self.phi_d_plus.clone(),
            phi_d_minus: self.phi_d_minus.clone(),
            h: matrices(&cyclic(&self.h, self.repeat_from, depth, "H")?)?,
            k: matrices(&cyclic(&self.k, self.repeat_from, depth, "K")?)?,
        })
    }

    pub fn from_witness(w: &SseWitness, name: Option<String>) -> Self {
        SseDoc {
            name,
            c: w.c.clone(),
            d: w.d.clone(),
            phi_1: w.phi_1.clone(),
            phi_2: w.phi_2.clone(),
            phi_c_plus: w.phi_c_plus.clone(),
            phi_c_minus: w.phi_c_minus.clone(),
            phi_d_plus: w.phi_d_plus.clone(),
            phi_d_minus: w.phi_d_minus.clone(),
            h: matrix_docs(&w.h),
            k: matrix_docs(&w.k),
            repeat_from: None,
        }
    }
}
