use std::collections::BTreeMap;

use bisys_core::{Symbol, Word};

use crate::{Result, SubshiftError};

/// A 2-block map: each admissible pair `x1 x2` goes to one symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockMap {
    table: BTreeMap<(Symbol, Symbol), Symbol>,
}

impl BlockMap {
    pub fn new(table: BTreeMap<(Symbol, Symbol), Symbol>) -> BlockMap {
        BlockMap { table }
    }

    pub fn get(&self, x1: &Symbol, x2: &Symbol) -> Option<&Symbol> {
        self.table.get(&(x1.clone(), x2.clone()))
    }

    pub fn table(&self) -> &BTreeMap<(Symbol, Symbol), Symbol> {
        &self.table
    }

    /// Slides the map along `w`, producing a word one symbol shorter.
    pub fn apply(&self, w: &[Symbol]) -> Result<Word> {
        w.windows(2)
            .map(|p| {
                self.get(&p[0], &p[1])
                    .cloned()
                    .ok_or_else(|| SubshiftError::UndefinedCode(p[0].to_string(), p[1].to_string()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.chars().map(|c| Symbol::atom(&c.to_string())).collect()
    }

    fn first_letter() -> BlockMap {
        let mut t = BTreeMap::new();
        for a in ["a", "b"] {
            for b in ["a", "b"] {
                t.insert((Symbol::atom(a), Symbol::atom(b)), Symbol::atom(a));
            }
        }
        BlockMap::new(t)
    }

    #[test]
    fn short_words_map_to_empty() {
        assert!(first_letter().apply(&word("a")).unwrap().is_empty());
        assert!(first_letter().apply(&[]).unwrap().is_empty());
    }

    #[test]
    fn projection_drops_last_letter() {
        assert_eq!(first_letter().apply(&word("abba")).unwrap(), word("abb"));
    }

    #[test]
    fn undefined_pair() {
        assert!(first_letter().apply(&word("ac")).is_err());
    }
}
