use std::collections::{BTreeMap, BTreeSet};

use bisys_bisystem::{presented_words, Side};
use bisys_core::{display_word, Specification, Symbol, Word};
use bisys_smb::{from_smb, SymbolicMatrixBisystem};
use bisys_subshift::BlockMap;
use serde::Serialize;

use crate::{EquivalenceError, PsseWitness, Result};

/// The 2-block codes of a properly strong witness: `Φ` from `Λ_M` to `Λ_N`
/// sends `x₁x₂` with `φ_M(x_i) = c_i d_i` to the symbol `y` with
/// `φ_N(y) = d₁c₂`, and `Ψ` sends `y₁y₂` with `φ_N(y_i) = d_i c'_i` to the
/// symbol `x` with `φ_M(x) = c'₁d₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyCode {
    pub forward: BlockMap,
    pub backward: BlockMap,
}

/// Presented words of length `n`, read on the plus side.
pub(crate) fn language(s: &SymbolicMatrixBisystem, n: usize) -> Result<Vec<Word>> {
    Ok(presented_words(&from_smb(s)?, Side::Plus, n)?)
}

fn halves(spec: &Specification, s: &Symbol) -> Result<(Symbol, Symbol)> {
    let img = spec.get(s).ok_or_else(|| EquivalenceError::Undefined(s.to_string()))?;
    img.factors().map(|(u, v)| (u.clone(), v.clone())).ok_or_else(|| EquivalenceError::NotProduct(img.to_string()))
}

fn code(pairs: &[Word], from: &Specification, to: &Specification) -> Result<BlockMap> {
    let inverse = to.inverse();
    let mut table = BTreeMap::new();
    for w in pairs {
        let (_, second) = halves(from, &w[0])?;
        let (first, _) = halves(from, &w[1])?;
        let target = Symbol::pair(second, first);
        let image = inverse
            .get(&target)
            .ok_or_else(|| EquivalenceError::Uncovered { pair: display_word(w), target: target.to_string() })?;
        table.insert((w[0].clone(), w[1].clone()), image.clone());
    }
    Ok(BlockMap::new(table))
}

/// Builds `Φ` on the admissible pairs of `Λ_M` and `Ψ` on those of `Λ_N`.
/// A pair whose target product has no preimage falsifies the witness and
/// is an error.
pub fn conjugacy_block_map(
    sm: &SymbolicMatrixBisystem,
    sn: &SymbolicMatrixBisystem,
    w: &PsseWitness,
) -> Result<ConjugacyCode> {
    for s in [sm, sn] {
        if s.depth() < 2 {
            return Err(EquivalenceError::TooShallow { depth: s.depth(), needed: 2 });
        }
    }
    Ok(ConjugacyCode {
        forward: code(&language(sm, 2)?, &w.phi_m, &w.phi_n)?,
        backward: code(&language(sn, 2)?, &w.phi_n, &w.phi_m)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
    /// `Ψ∘Φ` should drop the first and last letter.
    RoundTrip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeViolation {
    pub direction: Direction,
    pub word: Word,
    pub image: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub max_length: usize,
    pub words_checked: usize,
    pub violations: Vec<CodeViolation>,
}

impl CodeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `2 ≤ n ≤ max_length`: `Φ` maps `B_n(Λ_M)` into `B_{n-1}(Λ_N)`, `Ψ`
/// maps `B_n(Λ_N)` into `B_{n-1}(Λ_M)`, and `Ψ(Φ(x₁…x_n)) = x₂…x_{n-1}`.
pub fn check_code(
    sm: &SymbolicMatrixBisystem,
    sn: &SymbolicMatrixBisystem,
    code: &ConjugacyCode,
    max_length: usize,
) -> Result<CodeReport> {
    let mut report = CodeReport { max_length, words_checked: 0, violations: Vec::new() };
    let mut lang_m = vec![language(sm, 1)?];
    let mut lang_n = vec![language(sn, 1)?];
    for n in 2..=max_length {
        lang_m.push(language(sm, n)?);
        lang_n.push(language(sn, n)?);
        let below_m: BTreeSet<&Word> = lang_m[n - 2].iter().collect();
        let below_n: BTreeSet<&Word> = lang_n[n - 2].iter().collect();
        for (direction, words, map, below) in [
            (Direction::Forward, &lang_m[n - 1], &code.forward, &below_n),
            (Direction::Backward, &lang_n[n - 1], &code.backward, &below_m),
        ] {
            for word in words {
                report.words_checked += 1;
                let image = map.apply(word).ok();
                if !image.as_ref().is_some_and(|i| below.contains(i)) {
                    report.violations.push(CodeViolation { direction, word: word.clone(), image });
                }
            }
        }
        if n >= 3 {
            for word in &lang_m[n - 1] {
                let back = code.forward.apply(word).and_then(|y| code.backward.apply(&y)).ok();
                if back.as_deref() != Some(&word[1..n - 1]) {
                    report.violations.push(CodeViolation {
                        direction: Direction::RoundTrip,
                        word: word.clone(),
                        image: back,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trivial_psse_witness;
    use bisys_bisystem::fixtures;
    use bisys_smb::to_smb;

    #[test]
    fn trivial_code_drops_the_first_letter() {
        let s = to_smb(&fixtures::golden_mean(5));
        let w = trivial_psse_witness(&s).unwrap();
        let code = conjugacy_block_map(&s, &s, &w).unwrap();
        for ((_, x2), y) in code.forward.table() {
            assert_eq!(x2, y);
        }
        for ((y1, _), x) in code.backward.table() {
            assert_eq!(y1, x);
        }
        assert!(check_code(&s, &s, &code, 5).unwrap().holds());
    }

    #[test]
    fn missing_preimage_is_an_error() {
        let s = to_smb(&fixtures::golden_mean(4));
        let mut w = trivial_psse_witness(&s).unwrap();
        let a = Symbol::atom("a");
        w.phi_n =
            Specification::new(w.phi_n.iter().filter(|(k, _)| **k != a).map(|(k, v)| (k.clone(), v.clone()))).unwrap();
        assert!(matches!(conjugacy_block_map(&s, &s, &w), Err(EquivalenceError::Uncovered { .. })));
    }
}
