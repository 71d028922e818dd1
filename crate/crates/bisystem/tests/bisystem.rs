use std::collections::BTreeSet;

use bisys_bisystem::{
    fixtures, fpcc_check, from_lambda_graph_system, presented_words, to_dot, validate, vertex_name, Edge,
    LambdaGraphBisystem, LambdaGraphSystem, Side,
};
use bisys_core::{Symbol, Word};
use proptest::prelude::*;

const LABELS: [&str; 3] = ["a", "b", "c"];

/// Arbitrary edge sets over `a, b, c` between levels of size 1..=3; no
/// axiom is imposed.
fn arb_bisystem() -> impl Strategy<Value = LambdaGraphBisystem> {
    (1usize..=4)
        .prop_flat_map(|depth| {
            let sizes = prop::collection::vec(1usize..=3, depth);
            (Just(depth), sizes)
        })
        .prop_flat_map(|(depth, tail)| {
            let mut sizes = vec![1];
            sizes.extend(tail);
            let side = |sizes: Vec<usize>, minus: bool| {
                (0..depth)
                    .map(|l| {
                        let (s, t) = if minus { (sizes[l + 1], sizes[l]) } else { (sizes[l], sizes[l + 1]) };
                        prop::collection::btree_set((0..s, 0..t, 0..LABELS.len()), 1..=6).prop_map(|set| {
                            set.into_iter().map(|(s, t, a)| Edge::new(s, t, LABELS[a])).collect::<Vec<_>>()
                        })
                    })
                    .collect::<Vec<_>>()
            };
            (Just(sizes.clone()), side(sizes.clone(), true), side(sizes, false))
        })
        .prop_filter_map("edges must cover every level", |(sizes, minus, plus)| {
            LambdaGraphBisystem::new(sizes, minus, plus).ok()
        })
}

/// States reached from `start` at `level` by reading `w` down the minus
/// edges, one label per level.
fn minus_run(b: &LambdaGraphBisystem, level: usize, start: usize, w: &[Symbol]) -> BTreeSet<usize> {
    let mut current = BTreeSet::from([start]);
    for (k, a) in w.iter().enumerate() {
        let l = level - k - 1;
        current = b
            .minus_edges(l)
            .iter()
            .filter(|e| &e.label == a && current.contains(&e.source))
            .map(|e| e.target)
            .collect();
    }
    current
}

fn all_words(n: usize) -> Vec<Word> {
    (0..n).fold(vec![Word::new()], |acc, _| {
        acc.iter().flat_map(|w| LABELS.iter().map(move |a| [w.clone(), vec![Symbol::atom(a)]].concat())).collect()
    })
}

proptest! {
    #[test]
    fn follower_sets_match_word_membership(b in arb_bisystem()) {
        let f = b.follower_sets();
        for l in 0..=b.depth() {
            for v in 0..b.level_size(l) {
                let expected: BTreeSet<Word> = all_words(l).into_iter().filter(|w| !minus_run(&b, l, v, w).is_empty()).collect();
                prop_assert_eq!(&f[l][v], &expected);
            }
        }
    }

    #[test]
    fn transpose_is_an_involution(b in arb_bisystem()) {
        prop_assert_eq!(b.transpose().transpose(), b);
    }

    #[test]
    fn transpose_exchanges_followers_and_predecessors(b in arb_bisystem()) {
        let f = b.transpose().follower_sets();
        let p = b.predecessor_sets();
        for l in 0..=b.depth() {
            for v in 0..b.level_size(l) {
                let reversed: BTreeSet<Word> = p[l][v].iter().map(|w| w.iter().rev().cloned().collect()).collect();
                prop_assert_eq!(&f[l][v], &reversed);
            }
        }
    }

    #[test]
    fn transition_matrices_round_trip(b in arb_bisystem()) {
        prop_assert_eq!(LambdaGraphBisystem::from_transition_matrices(&b.transition_matrices()).unwrap(), b);
    }
}

#[test]
fn printed_fixtures() {
    assert_eq!(fixtures::golden_mean(5).level_sizes(), &[1, 2, 4, 4, 4, 4]);
    assert_eq!(fixtures::even_shift(5).level_sizes(), &[1, 2, 3, 4, 4, 4]);
    for b in [fixtures::full_shift(2, 5), fixtures::full_shift(3, 5), fixtures::golden_mean(5)] {
        assert!(validate(&b).is_valid(), "{}", validate(&b));
        assert!(fpcc_check(&b).holds());
    }
    assert!(!validate(&fixtures::even_shift(5)).is_valid());
}

#[test]
fn golden_mean_words() {
    let b = fixtures::golden_mean(5);
    let bb = [Symbol::atom("b"), Symbol::atom("b")];
    for side in [Side::Minus, Side::Plus] {
        for (n, count) in [(1, 2), (2, 3), (3, 5), (4, 8)] {
            let words = presented_words(&b, side, n).unwrap();
            assert_eq!(words.len(), count);
            assert!(words.iter().all(|w| !w.windows(2).any(|p| p == bb)));
        }
    }
}

#[test]
fn graph_imports_are_valid() {
    for a in [vec![vec![1, 1], vec![1, 0]], vec![vec![2]], vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]] {
        let lgs = LambdaGraphSystem::from_matrix(&a, 5).unwrap();
        assert!(lgs.check().is_empty());
        let b = from_lambda_graph_system(&lgs).unwrap();
        assert_eq!(b.level_sizes(), vec![a.len(); 6].as_slice());
        assert!(validate(&b).is_valid(), "{}", validate(&b));
    }
}

#[test]
fn dot_lists_every_vertex_once_per_diagram() {
    let b = fixtures::golden_mean(3);
    let dot = to_dot(&b);
    assert!(dot.starts_with("digraph"));
    for l in 0..=b.depth() {
        for v in 0..b.level_size(l) {
            let node = format!("[label=\"{}\"];", vertex_name(l, v));
            assert_eq!(dot.matches(&node).count(), 2, "{node}");
        }
    }
    let edges: usize = (0..b.depth()).map(|l| b.minus_edges(l).len() + b.plus_edges(l).len()).sum();
    assert_eq!(dot.matches(" -> ").count(), edges);
}
