use std::collections::{BTreeSet, HashMap};

use bisys_core::{Alphabet, Symbol, Word};
use bisys_subshift::{
    admissible_words, fill_in_words, higher_block_recode, past_state_set, LabeledGraph, SftMatrix, StateSet,
    SubshiftPresentation,
};
use proptest::prelude::*;

fn word(s: &str) -> Word {
    s.chars().map(|c| Symbol::atom(&c.to_string())).collect()
}

fn even_graph() -> LabeledGraph {
    LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "b"), (1, 0, "b")]).unwrap()
}

fn all_words(alphabet: &[Symbol], n: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |s| {
                    let mut v = w.clone();
                    v.push(s.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Path existence by explicit search over edge sequences.
fn has_path(g: &LabeledGraph, w: &[Symbol]) -> bool {
    fn go(g: &LabeledGraph, q: usize, w: &[Symbol]) -> bool {
        match w.split_first() {
            None => true,
            Some((a, rest)) => g.edges().iter().any(|e| e.source == q && &e.label == a && go(g, e.target, rest)),
        }
    }
    (0..g.states()).any(|q| go(g, q, w))
}

/// End states of every path of length `depth + |w|` whose label ends in `w`.
fn deep_past(g: &LabeledGraph, w: &[Symbol], depth: usize) -> StateSet {
    let mut out = StateSet::empty(g.states());
    let mut frontier: Vec<(usize, usize)> = (0..g.states()).map(|q| (q, 0)).collect();
    let total = depth + w.len();
    while let Some((q, k)) = frontier.pop() {
        if k == total {
            out.insert(q);
            continue;
        }
        for e in g.edges() {
            if e.source == q && (k < depth || e.label == w[k - depth]) {
                frontier.push((e.target, k + 1));
            }
        }
    }
    out
}

#[test]
fn even_shift_words_match_path_oracle() {
    let g = even_graph();
    let p = SubshiftPresentation::Sofic(g.clone());
    let symbols = g.alphabet().symbols().to_vec();
    for n in 0..=5 {
        let expected: Vec<Word> = all_words(&symbols, n).into_iter().filter(|w| has_path(&g, w)).collect();
        assert_eq!(admissible_words(&p, n).unwrap(), expected, "length {n}");
    }
}

#[test]
fn even_shift_pasts_match_deep_extension() {
    let g = even_graph();
    for w in ["ab", "abb", "b", "bab", "a"] {
        let w = word(w);
        assert_eq!(past_state_set(&g, &w).unwrap(), deep_past(&g, &w, 10));
    }
}

#[test]
fn languages_grow_and_extend() {
    let presentations = [
        SubshiftPresentation::Sft(SftMatrix::numbered(vec![vec![1, 1], vec![1, 0]]).unwrap()),
        SubshiftPresentation::Sofic(even_graph()),
        SubshiftPresentation::Forbidden { alphabet: Alphabet::from_names(&["1", "2"]), words: vec![word("121")] },
    ];
    for p in &presentations {
        let mut prev = 0;
        for n in 0..7 {
            let words = admissible_words(p, n).unwrap();
            assert!(words.len() >= prev);
            prev = words.len();
            let longer: BTreeSet<Word> = admissible_words(p, n + 1).unwrap().into_iter().collect();
            for w in &words {
                assert!(longer.iter().any(|v| v[..n] == w[..]), "right extension of {w:?}");
                assert!(longer.iter().any(|v| v[1..] == w[..]), "left extension of {w:?}");
            }
        }
    }
}

#[test]
fn fill_in_is_admissible() {
    let g = even_graph();
    let p = SubshiftPresentation::Sofic(g.clone());
    let sets = [StateSet::from_states(2, [0]), StateSet::from_states(2, [1]), StateSet::full(2)];
    for n in 0..6 {
        let all: BTreeSet<Word> = admissible_words(&p, n).unwrap().into_iter().collect();
        for a in &sets {
            for b in &sets {
                for w in fill_in_words(&g, a, b, n) {
                    assert!(all.contains(&w));
                }
            }
        }
        assert_eq!(fill_in_words(&g, &StateSet::full(2), &StateSet::full(2), n).len(), all.len());
    }
}

fn forbidden_strategy() -> impl Strategy<Value = Vec<Word>> {
    let sym = proptest::sample::select(vec![Symbol::atom("1"), Symbol::atom("2"), Symbol::atom("3")]);
    proptest::collection::vec(proptest::collection::vec(sym, 2..=3), 0..=3)
}

/// True when `w` sits inside some forbidden-free word with `left` symbols
/// before it and `right` after it, found by plain depth-first search.
fn extends(w: &[Symbol], left: usize, right: usize, alphabet: &[Symbol], forbidden: &[Word]) -> bool {
    let clean = |v: &[Symbol]| !forbidden.iter().any(|f| v.windows(f.len()).any(|x| x == f.as_slice()));
    if !clean(w) {
        return false;
    }
    if right > 0 {
        return alphabet.iter().any(|s| {
            let mut v = w.to_vec();
            v.push(s.clone());
            extends(&v, left, right - 1, alphabet, forbidden)
        });
    }
    if left > 0 {
        return alphabet.iter().any(|s| {
            let mut v = vec![s.clone()];
            v.extend_from_slice(w);
            extends(&v, left - 1, 0, alphabet, forbidden)
        });
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recoding_matches_direct_filter(forbidden in forbidden_strategy()) {
        let alphabet = Alphabet::from_names(&["1", "2", "3"]);
        let symbols = alphabet.symbols().to_vec();
        let Ok(recoded) = higher_block_recode(&alphabet, &forbidden) else {
            return Ok(());
        };
        let g = recoded.to_graph();
        let p = SubshiftPresentation::Sofic(g);
        for n in 0..=8 {
            let got = admissible_words(&p, n).unwrap();
            // With at most nine 2-blocks, extending ten symbols each way
            // forces a repeated block, hence a bi-infinite extension.
            // Forbidden words are at most three long, so once |w| >= 2 the two
            // sides extend independently from the boundary pairs.
            let mut memo: HashMap<(Word, bool), bool> = HashMap::new();
            let mut side = |ctx: &[Symbol], right: bool| -> bool {
                *memo.entry((ctx.to_vec(), right)).or_insert_with(|| {
                    if right {
                        extends(ctx, 0, 10, &symbols, &forbidden)
                    } else {
                        extends(ctx, 10, 0, &symbols, &forbidden)
                    }
                })
            };
            let clean = |v: &[Symbol]| !forbidden.iter().any(|f| v.windows(f.len()).any(|x| x == f.as_slice()));
            let expected: Vec<Word> = all_words(&symbols, n)
                .into_iter()
                .filter(|w| {
                    if n < 2 {
                        extends(w, 10, 10, &symbols, &forbidden)
                    } else {
                        clean(w) && side(&w[n - 2..], true) && side(&w[..2], false)
                    }
                })
                .collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn past_sets_shrink_under_left_extension(w in proptest::collection::vec(proptest::sample::select(vec!["a", "b"]), 1..8)) {
        let g = even_graph();
        let w: Word = w.iter().map(|s| Symbol::atom(s)).collect();
        if let Ok(p) = past_state_set(&g, &w) {
            for a in g.alphabet().iter() {
                let mut aw = vec![a.clone()];
                aw.extend(w.iter().cloned());
                if let Ok(q) = past_state_set(&g, &aw) {
                    prop_assert!(q.is_subset(&p));
                }
            }
        }
    }
}
