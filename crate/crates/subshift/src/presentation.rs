use std::collections::BTreeSet;

use bisys_core::{Alphabet, Symbol, Word};

use crate::{GraphEdge, LabeledGraph, Result, SubshiftError};

/// A 0/1 transition matrix over state symbols, with no zero row or column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftMatrix {
    symbols: Vec<Symbol>,
    entries: Vec<Vec<u8>>,
}

impl SftMatrix {
    pub fn new(symbols: Vec<Symbol>, entries: Vec<Vec<u8>>) -> Result<SftMatrix> {
        Alphabet::new(symbols.iter().cloned())?;
        let n = symbols.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(SubshiftError::Shape);
        }
        for (i, row) in entries.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x > 1) {
                return Err(SubshiftError::NotZeroOne(i, j));
            }
            if row.iter().all(|&x| x == 0) {
                return Err(SubshiftError::ZeroLine { kind: "row", index: i });
            }
        }
        for j in 0..n {
            if entries.iter().all(|r| r[j] == 0) {
                return Err(SubshiftError::ZeroLine { kind: "column", index: j });
            }
        }
        Ok(SftMatrix { symbols, entries })
    }

    /// States named `1..=n`.
    pub fn numbered(entries: Vec<Vec<u8>>) -> Result<SftMatrix> {
        let symbols = (1..=entries.len()).map(|k| Symbol::atom(&k.to_string())).collect();
        SftMatrix::new(symbols, entries)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    /// States are the symbols; the edge `i -> j` carries the label of `j`,
    /// so a path spells the symbols it enters.
    pub fn to_graph(&self) -> LabeledGraph {
        let n = self.size();
        let edges = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.entries[i][j] == 1)
            .map(|(i, j)| GraphEdge { source: i, target: j, label: self.symbols[j].clone() })
            .collect();
        LabeledGraph::new(n, edges).expect("no zero rows or columns")
    }
}

/// A higher block recoding of a forbidden-word shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRecoding {
    pub sft: SftMatrix,
    /// The block of original symbols behind each state of `sft`.
    pub blocks: Vec<Word>,
}

impl BlockRecoding {
    /// Presentation over the original symbols: entering block `b` reads
    /// the last symbol of `b`.
    pub fn to_graph(&self) -> LabeledGraph {
        let n = self.sft.size();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.sft.get(i, j) == 1 {
                    let label = self.blocks[j].last().expect("non-empty block").clone();
                    edges.push(GraphEdge { source: i, target: j, label });
                }
            }
        }
        LabeledGraph::new(n, edges).expect("recoding is essential")
    }
}

fn contains_forbidden(w: &[Symbol], forbidden: &[Word]) -> bool {
    forbidden.iter().any(|f| f.len() <= w.len() && w.windows(f.len()).any(|x| x == f.as_slice()))
}

fn block_name(block: &[Symbol]) -> String {
    let names: Vec<String> = block.iter().map(|s| s.to_string()).collect();
    if names.iter().all(|n| n.chars().count() == 1) {
        names.concat()
    } else {
        names.join("_")
    }
}

/// Recodes the shift over `alphabet` avoiding `forbidden` as an SFT on
/// `(k-1)`-blocks, `k` the longest forbidden length, keeping only blocks
/// that extend in both directions.
pub fn higher_block_recode(alphabet: &Alphabet, forbidden: &[Word]) -> Result<BlockRecoding> {
    for f in forbidden {
        if f.len() < 2 {
            return Err(SubshiftError::ForbiddenTooShort(bisys_core::display_word(f)));
        }
        if f.iter().any(|s| !alphabet.contains(s)) {
            return Err(SubshiftError::ForeignSymbol(bisys_core::display_word(f)));
        }
    }
    let k = forbidden.iter().map(Vec::len).max().unwrap_or(2);
    let mut blocks: Vec<Word> = vec![Vec::new()];
    for _ in 0..k - 1 {
        blocks = blocks
            .into_iter()
            .flat_map(|b| {
                alphabet.iter().map(move |s| {
                    let mut w = b.clone();
                    w.push(s.clone());
                    w
                })
            })
            .filter(|w| !contains_forbidden(w, forbidden))
            .collect();
    }
    let n = blocks.len();
    let mut adj = vec![vec![0u8; n]; n];
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate() {
            if a[1..] == b[..k - 2] {
                let mut w = a.clone();
                w.push(b[k - 2].clone());
                if !contains_forbidden(&w, forbidden) {
                    adj[i][j] = 1;
                }
            }
        }
    }
    let mut alive: BTreeSet<usize> = (0..n).collect();
    loop {
        let dead: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| !alive.iter().any(|&j| adj[i][j] == 1) || !alive.iter().any(|&j| adj[j][i] == 1))
            .collect();
        if dead.is_empty() {
            break;
        }
        for d in dead {
            alive.remove(&d);
        }
    }
    if alive.is_empty() {
        return Err(SubshiftError::EmptyLanguage);
    }
    let keep: Vec<usize> = alive.into_iter().collect();
    let blocks: Vec<Word> = keep.iter().map(|&i| blocks[i].clone()).collect();
    let entries = keep.iter().map(|&i| keep.iter().map(|&j| adj[i][j]).collect()).collect();
    let symbols = blocks.iter().map(|b| Symbol::atom(&block_name(b))).collect();
    Ok(BlockRecoding { sft: SftMatrix::new(symbols, entries)?, blocks })
}

/// The supported ways of describing a subshift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubshiftPresentation {
    Sft(SftMatrix),
    Sofic(LabeledGraph),
    Forbidden { alphabet: Alphabet, words: Vec<Word> },
}

impl SubshiftPresentation {
    /// The labelled graph used by every downstream computation.
    pub fn graph(&self) -> Result<LabeledGraph> {
        match self {
            SubshiftPresentation::Sft(a) => Ok(a.to_graph()),
            SubshiftPresentation::Sofic(g) => Ok(g.clone()),
            SubshiftPresentation::Forbidden { alphabet, words } => Ok(higher_block_recode(alphabet, words)?.to_graph()),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Ok(self.graph()?.alphabet().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.chars().map(|c| Symbol::atom(&c.to_string())).collect()
    }

    #[test]
    fn sft_rejects_zero_lines() {
        assert!(matches!(
            SftMatrix::numbered(vec![vec![1, 0], vec![1, 0]]),
            Err(SubshiftError::ZeroLine { kind: "column", index: 1 })
        ));
        assert!(SftMatrix::numbered(vec![vec![2]]).is_err());
    }

    #[test]
    fn forbidding_22_gives_golden_mean() {
        let r = higher_block_recode(&Alphabet::from_names(&["1", "2"]), &[word("22")]).unwrap();
        assert_eq!(r.sft.entries(), &[vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn forbidding_nothing_gives_full_shift() {
        let r = higher_block_recode(&Alphabet::from_names(&["1", "2", "3"]), &[]).unwrap();
        assert!(r.sft.entries().iter().flatten().all(|&x| x == 1));
    }

    #[test]
    fn forbidding_121_keeps_four_blocks() {
        let r = higher_block_recode(&Alphabet::from_names(&["1", "2"]), &[word("121")]).unwrap();
        assert_eq!(r.blocks.len(), 4);
    }

    #[test]
    fn forbidding_everything_is_empty() {
        let ab = Alphabet::from_names(&["1", "2"]);
        let all = vec![word("11"), word("12"), word("21"), word("22")];
        assert_eq!(higher_block_recode(&ab, &all), Err(SubshiftError::EmptyLanguage));
        assert!(higher_block_recode(&ab, &[word("1")]).is_err());
    }
}
