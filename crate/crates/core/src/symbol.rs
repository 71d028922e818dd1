use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{CoreError, Result};

/// A symbol of an alphabet, or a product symbol `(c.d)` of two symbols.
///
/// Ordering is structural: atoms sort by name and precede product symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Atom(Arc<str>),
    Pair(Box<Symbol>, Box<Symbol>),
}

/// A finite sequence of symbols.
pub type Word = Vec<Symbol>;

const RESERVED: &[char] = &['(', ')', '.', '*', ',', '"'];

impl Symbol {
    /// Builds an atom. Panics on names that could not be parsed back; use
    /// [`parse_symbol`] for untrusted input.
    pub fn atom(name: &str) -> Symbol {
        assert!(valid_atom(name), "invalid atom name `{name}`");
        Symbol::Atom(Arc::from(name))
    }

    pub fn pair(c: Symbol, d: Symbol) -> Symbol {
        Symbol::Pair(Box::new(c), Box::new(d))
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Symbol::Pair(..))
    }

    /// The two factors of a product symbol.
    pub fn factors(&self) -> Option<(&Symbol, &Symbol)> {
        match self {
            Symbol::Pair(c, d) => Some((c, d)),
            Symbol::Atom(_) => None,
        }
    }

    /// Exchanges the factors of a product symbol.
    pub fn swapped(&self) -> Option<Symbol> {
        self.factors().map(|(c, d)| Symbol::pair(d.clone(), c.clone()))
    }
}

fn valid_atom(name: &str) -> bool {
    !name.is_empty() && name != "0" && name != "+" && !name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c))
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Atom(name) => f.write_str(name),
            Symbol::Pair(c, d) => write!(f, "({c}.{d})"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `name` or a nested product `(x.y)`.
pub fn parse_symbol(input: &str) -> Result<Symbol> {
    let s = input.trim();
    let (sym, rest) = parse_prefix(s).map_err(|r| CoreError::parse(input, r))?;
    if !rest.is_empty() {
        return Err(CoreError::parse(input, format!("trailing input `{rest}`")));
    }
    Ok(sym)
}

fn parse_prefix(s: &str) -> std::result::Result<(Symbol, &str), String> {
    if let Some(inner) = s.strip_prefix('(') {
        let (c, rest) = parse_prefix(inner)?;
        let rest = rest.strip_prefix('.').ok_or("expected `.` inside product symbol")?;
        let (d, rest) = parse_prefix(rest)?;
        let rest = rest.strip_prefix(')').ok_or("expected `)`")?;
        return Ok((Symbol::pair(c, d), rest));
    }
    let end = s.find(|c: char| c.is_whitespace() || RESERVED.contains(&c)).unwrap_or(s.len());
    let name = &s[..end];
    if !valid_atom(name) {
        return Err(format!("invalid symbol name `{name}`"));
    }
    Ok((Symbol::Atom(Arc::from(name)), &s[end..]))
}

impl FromStr for Symbol {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Symbol> {
        parse_symbol(s)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Symbol, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_symbol(&s).map_err(serde::de::Error::custom)
    }
}

/// Renders a word. Single-character symbols are juxtaposed, anything else
/// is space separated.
pub fn display_word(word: &[Symbol]) -> String {
    let parts: Vec<String> = word.iter().map(|s| s.to_string()).collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// A non-empty ordered set of symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet(Vec<Symbol>);

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Alphabet> {
        let mut seen = BTreeSet::new();
        for s in symbols {
            if !seen.insert(s.clone()) {
                return Err(CoreError::DuplicateSymbol(s.to_string()));
            }
        }
        if seen.is_empty() {
            return Err(CoreError::EmptyAlphabet);
        }
        Ok(Alphabet(seen.into_iter().collect()))
    }

    /// Collects the distinct symbols of an iterator, ignoring repeats.
    pub fn collect(symbols: impl IntoIterator<Item = Symbol>) -> Result<Alphabet> {
        let set: BTreeSet<Symbol> = symbols.into_iter().collect();
        Alphabet::new(set)
    }

    pub fn from_names(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Symbol::atom(n))).expect("valid alphabet")
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.0.binary_search(s).ok()
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Alphabet, D::Error> {
        let v = Vec::<Symbol>::deserialize(deserializer)?;
        Alphabet::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["a", "a-", "(a.b)", "((a.b).c)", "(x.(1.y))"] {
            assert_eq!(parse_symbol(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_names() {
        assert!(parse_symbol("").is_err());
        assert!(parse_symbol("0").is_err());
        assert!(parse_symbol("(a.b").is_err());
        assert!(parse_symbol("a b").is_err());
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(vec![]).is_err());
        assert!(Alphabet::new(vec![Symbol::atom("a"), Symbol::atom("a")]).is_err());
        let a = Alphabet::from_names(&["b", "a"]);
        assert_eq!(a.symbols()[0], Symbol::atom("a"));
    }

    #[test]
    fn word_display() {
        let w = vec![Symbol::atom("1"), Symbol::atom("2")];
        assert_eq!(display_word(&w), "12");
        let w = vec![Symbol::atom("a+"), Symbol::atom("b")];
        assert_eq!(display_word(&w), "a+ b");
    }
}
