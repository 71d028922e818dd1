use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::symbol::parse_symbol;
use crate::{CoreError, Result, Specification, Symbol, Word};

/// A finite formal sum of words, kept as a sorted multiset.
///
/// Text form: `0` for the empty sum, otherwise terms separated by a
/// standalone `+`, with the symbols of a term joined by `*`,
/// e.g. `a*x + b*x`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum {
    terms: Vec<Word>,
}

impl FormalSum {
    pub fn zero() -> FormalSum {
        FormalSum::default()
    }

    pub fn symbol(s: Symbol) -> FormalSum {
        FormalSum { terms: vec![vec![s]] }
    }

    pub fn from_words(words: impl IntoIterator<Item = Word>) -> FormalSum {
        let mut terms: Vec<Word> = words.into_iter().collect();
        terms.sort();
        FormalSum { terms }
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> FormalSum {
        FormalSum::from_words(symbols.into_iter().map(|s| vec![s]))
    }

    pub fn terms(&self) -> &[Word] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        FormalSum::from_words(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn add_assign(&mut self, other: &FormalSum) {
        if other.is_zero() {
            return;
        }
        self.terms.extend(other.terms.iter().cloned());
        self.terms.sort();
    }

    /// Bilinear product: every concatenation `uv` of a term `u` of `self`
    /// and a term `v` of `other`, with multiplicity.
    pub fn product(&self, other: &FormalSum) -> FormalSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for u in &self.terms {
            for v in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                terms.push(w);
            }
        }
        FormalSum::from_words(terms)
    }

    /// Replaces every length-2 term `c d` by the product symbol `(c.d)`.
    pub fn fuse(&self) -> Result<FormalSum> {
        let terms = self
            .terms
            .iter()
            .map(|w| match w.as_slice() {
                [c, d] => Ok(vec![Symbol::pair(c.clone(), d.clone())]),
                _ => Err(CoreError::NotFactorable(crate::display_word(w))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalSum::from_words(terms))
    }

    /// The exchanging specification: `c d` becomes `d c`, and a product
    /// symbol `(c.d)` becomes `(d.c)`.
    pub fn kappa(&self) -> Result<FormalSum> {
        let terms = self
            .terms
            .iter()
            .map(|w| match w.as_slice() {
                [c, d] => Ok(vec![d.clone(), c.clone()]),
                [s] if s.is_pair() => Ok(vec![s.swapped().expect("pair")]),
                _ => Err(CoreError::NotFactorable(crate::display_word(w))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalSum::from_words(terms))
    }

    /// Substitutes every symbol through `spec`.
    pub fn map(&self, spec: &Specification) -> Result<FormalSum> {
        let terms = self
            .terms
            .iter()
            .map(|w| {
                w.iter()
                    .map(|s| spec.get(s).cloned().ok_or_else(|| CoreError::Undefined(s.to_string())))
                    .collect::<Result<Word>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormalSum::from_words(terms))
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.iter().flatten().cloned().collect()
    }

    /// True when some term occurs more than once.
    pub fn has_repeated_terms(&self) -> bool {
        self.terms.windows(2).any(|w| w[0] == w[1])
    }

    pub fn contains_word(&self, w: &[Symbol]) -> bool {
        self.terms.binary_search_by(|t| t.as_slice().cmp(w)).is_ok()
    }

    /// Number of occurrences of the single-symbol term `s`.
    pub fn count_symbol(&self, s: &Symbol) -> usize {
        self.terms.iter().filter(|w| w.len() == 1 && &w[0] == s).count()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, w) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let parts: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for FormalSum {
    type Err = CoreError;

    fn from_str(input: &str) -> Result<FormalSum> {
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(FormalSum::zero());
        }
        let mut terms = Vec::new();
        let mut expect_term = true;
        for token in trimmed.split_whitespace() {
            if token == "+" {
                if expect_term {
                    return Err(CoreError::parse(input, "dangling `+`"));
                }
                expect_term = true;
                continue;
            }
            if !expect_term {
                return Err(CoreError::parse(input, "terms must be separated by ` + `"));
            }
            let word = split_term(token)
                .into_iter()
                .map(parse_symbol)
                .collect::<Result<Word>>()
                .map_err(|e| CoreError::parse(input, e.to_string()))?;
            terms.push(word);
            expect_term = false;
        }
        if expect_term {
            return Err(CoreError::parse(input, "empty sum; write `0`"));
        }
        Ok(FormalSum::from_words(terms))
    }
}

/// Splits a term on `*` at parenthesis depth zero.
fn split_term(token: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in token.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                parts.push(&token[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&token[start..]);
    parts
}

impl Serialize for FormalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<FormalSum, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
