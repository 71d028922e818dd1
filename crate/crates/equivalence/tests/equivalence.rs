use std::collections::BTreeSet;

use bisys_bisystem::{fixtures, fpcc_check};
use bisys_canonical::canonical_smb;
use bisys_core::{Alphabet, FormalSum, Symbol, SymbolicMatrix, Word};
use bisys_equivalence::{
    bipartite_split, check_code, conjugacy_block_map, detect_bipartite, psse_to_sse, trivial_psse_witness,
    verify_psse_1step, verify_sse_1step, BipartiteStructure, Check, Equation, PsseWitness,
};
use bisys_smb::{from_smb, sft_smb, to_smb, validate_smb, SftAlphabets, SymbolicMatrixBisystem};
use bisys_subshift::{admissible_words, LabeledGraph, SftMatrix, SubshiftPresentation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alternating(depth: usize) -> SymbolicMatrixBisystem {
    sft_smb(&SymbolicMatrix::parse_rows(&[&["0", "a"], &["b", "0"]]), depth, SftAlphabets::Common).unwrap()
}

fn even() -> SubshiftPresentation {
    SubshiftPresentation::Sofic(LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "b"), (1, 0, "b")]).unwrap())
}

/// Valid bisystems used throughout: hand-entered full shifts and golden
/// mean, and canonical builds of the even shift and a 3-state SFT.
fn valid_fixtures() -> Vec<(&'static str, SymbolicMatrixBisystem)> {
    let three =
        SubshiftPresentation::Sft(SftMatrix::numbered(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap());
    vec![
        ("full 2-shift", to_smb(&fixtures::full_shift(2, 6))),
        ("full 3-shift", to_smb(&fixtures::full_shift(3, 6))),
        ("golden mean", to_smb(&fixtures::golden_mean(6))),
        ("even shift", canonical_smb(&even(), 6).unwrap()),
        ("3-state SFT", canonical_smb(&three, 6).unwrap()),
    ]
}

fn exchanged(a: &SymbolicMatrix, b: &SymbolicMatrix, c: &SymbolicMatrix, d: &SymbolicMatrix) -> bool {
    a.mul(b).unwrap().kappa().unwrap() == c.mul(d).unwrap()
}

/// The exchange relations between consecutive blocks of a bipartite
/// bisystem, read off the local property blockwise.
fn block_exchanges_hold(bip: &BipartiteStructure) -> bool {
    (0..bip.p.len() - 1).all(|l| {
        let (p, q, x, y) = (&bip.p, &bip.q, &bip.x, &bip.y);
        if l % 2 == 1 {
            exchanged(&y[l], &p[l + 1], &p[l], &y[l + 1]) && exchanged(&x[l], &q[l + 1], &q[l], &x[l + 1])
        } else {
            exchanged(&x[l], &p[l + 1], &p[l], &x[l + 1]) && exchanged(&y[l], &q[l + 1], &q[l], &y[l + 1])
        }
    })
}

#[test]
fn trivial_witness_verifies_on_valid_fixtures() {
    for (name, s) in valid_fixtures() {
        let w = trivial_psse_witness(&s).unwrap();
        let r = verify_psse_1step(&s, &s, &w, s.depth());
        assert!(r.holds(), "{name}: {r}");
        assert!(r.unused_products.is_empty());
        let sse = psse_to_sse(&w).unwrap();
        let r = verify_sse_1step(&s, &s, &sse, s.depth());
        assert!(r.holds(), "{name}: {r}");
    }
}

#[test]
fn printed_even_shift_breaks_the_exchange_at_level_zero() {
    // The transcribed bisystem fails the local property between V_0 and V_2,
    // which is exactly the exchange Y_1 P_2 ≃κ P_1 Y_2 of the trivial witness.
    let s = to_smb(&fixtures::even_shift(5));
    let w = trivial_psse_witness(&s).unwrap();
    let r = verify_psse_1step(&s, &s, &w, 5);
    let f = r.first_failure().unwrap();
    assert_eq!((f.check.clone(), f.level), (Check::Equation(Equation::YP), 0));
}

#[test]
fn converted_trivial_witness_is_the_identity_pattern() {
    let s = to_smb(&fixtures::golden_mean(5));
    let w = trivial_psse_witness(&s).unwrap();
    let sse = psse_to_sse(&w).unwrap();
    let one = Symbol::atom("1");
    for l in 0..5 {
        // H_l = E·M⁺_l read as (1.a), K_l = M⁻_l·E read as (b.1).
        let h = s.plus(l).map_symbols(&sse_spec(&s, |a| Symbol::pair(one.clone(), a.clone()))).unwrap();
        let k = s.minus(l).map_symbols(&sse_spec(&s, |a| Symbol::pair(a.clone(), one.clone()))).unwrap();
        assert_eq!(sse.h[l], h);
        assert_eq!(sse.k[l], k);
    }
}

fn sse_spec(s: &SymbolicMatrixBisystem, f: impl Fn(&Symbol) -> Symbol) -> bisys_core::Specification {
    let mut all = s.symbols(bisys_bisystem::Side::Minus);
    all.extend(s.symbols(bisys_bisystem::Side::Plus));
    bisys_core::Specification::new(all.iter().map(|a| (a.clone(), f(a)))).unwrap()
}

#[test]
fn alternating_split_is_two_full_one_shifts() {
    let s = alternating(12);
    let bip = detect_bipartite(&s).unwrap();
    assert!(block_exchanges_hold(&bip));
    let split = bipartite_split(&s, &bip).unwrap();
    for (t, sym) in [(&split.cd, "(a.b)"), (&split.dc, "(b.a)")] {
        assert_eq!(t.depth(), 6);
        assert_eq!(t.level_sizes().unwrap(), vec![1; 7]);
        let one = SymbolicMatrix::parse_rows(&[&[sym]]);
        assert!(t.minus_matrices().iter().chain(t.plus_matrices()).all(|m| m == &one));
        assert!(validate_smb(t).is_valid());
        assert!(fpcc_check(&from_smb(t).unwrap()).holds());
    }
    let r = verify_psse_1step(&split.cd, &split.dc, &split.witness, 6);
    assert!(r.holds(), "{r}");
    let sse = psse_to_sse(&split.witness).unwrap();
    assert!(verify_sse_1step(&split.cd, &split.dc, &sse, 6).holds());

    let code = conjugacy_block_map(&split.cd, &split.dc, &split.witness).unwrap();
    let ab = Symbol::pair(Symbol::atom("a"), Symbol::atom("b"));
    let ba = Symbol::pair(Symbol::atom("b"), Symbol::atom("a"));
    assert_eq!(code.forward.get(&ab, &ab), Some(&ba));
    let report = check_code(&split.cd, &split.dc, &code, 6).unwrap();
    assert!(report.holds(), "{:?}", report.violations);
}

#[test]
fn bipartite_detection_on_canonical_builds() {
    let alternation = SubshiftPresentation::Sft(
        SftMatrix::new(vec![Symbol::atom("a"), Symbol::atom("b")], vec![vec![0, 1], vec![1, 0]]).unwrap(),
    );
    let two_to_one = SubshiftPresentation::Sft(
        SftMatrix::new(
            ["c1", "c2", "d"].iter().map(|s| Symbol::atom(s)).collect(),
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]],
        )
        .unwrap(),
    );
    for (p, c) in [(alternation, vec!["a"]), (two_to_one, vec!["c1", "c2"])] {
        let s = canonical_smb(&p, 6).unwrap();
        let bip = detect_bipartite(&s).expect("bipartite subshift has a bipartite canonical bisystem");
        assert_eq!(bip.c, c.iter().map(|x| Symbol::atom(x)).collect::<BTreeSet<_>>());
        assert!(block_exchanges_hold(&bip));
        let split = bipartite_split(&s, &bip).unwrap();
        assert!(validate_smb(&split.cd).is_valid());
        assert!(validate_smb(&split.dc).is_valid());
        assert!(verify_psse_1step(&split.cd, &split.dc, &split.witness, 3).holds());
    }
    assert!(detect_bipartite(&canonical_smb(&even(), 5).unwrap()).is_none());
}

/// `B_n` of the golden mean straight from its forbidden word.
fn golden_language(n: usize) -> BTreeSet<Word> {
    let p = SubshiftPresentation::Forbidden {
        alphabet: Alphabet::from_names(&["a", "b"]),
        words: vec![vec![Symbol::atom("b"), Symbol::atom("b")]],
    };
    admissible_words(&p, n).unwrap().into_iter().collect()
}

#[test]
fn trivial_codes_map_words_admissibly() {
    let s = to_smb(&fixtures::golden_mean(6));
    let w = trivial_psse_witness(&s).unwrap();
    let code = conjugacy_block_map(&s, &s, &w).unwrap();
    for n in 2..=6 {
        let below = golden_language(n - 1);
        for x in golden_language(n) {
            let y = code.forward.apply(&x).unwrap();
            assert!(below.contains(&y));
            assert_eq!(y, x[1..].to_vec());
        }
    }
    for (_, s) in valid_fixtures() {
        let w = trivial_psse_witness(&s).unwrap();
        let code = conjugacy_block_map(&s, &s, &w).unwrap();
        assert!(check_code(&s, &s, &code, 6).unwrap().holds());
    }
}

#[test]
fn witnesses_survive_a_json_round_trip() {
    let s = alternating(4);
    let split = bipartite_split(&s, &detect_bipartite(&s).unwrap()).unwrap();
    let text = serde_json::to_string(&split.witness).unwrap();
    let back: PsseWitness = serde_json::from_str(&text).unwrap();
    assert_eq!(back, split.witness);
}

#[test]
fn corrupt_then_repair() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, s) in valid_fixtures() {
        let w = trivial_psse_witness(&s).unwrap();
        for _ in 0..10 {
            let mut bad = w.clone();
            let k = rng.gen_range(0..bad.p.len());
            let family = rng.gen_range(0..4);
            let m = match family {
                0 => &mut bad.p[k],
                1 => &mut bad.q[k],
                2 => &mut bad.x[k],
                _ => &mut bad.y[k],
            };
            let cells: Vec<(usize, usize)> =
                m.entries().filter(|(_, _, v)| !v.is_zero()).map(|(i, j, _)| (i, j)).collect();
            let (i, j) = cells[rng.gen_range(0..cells.len())];
            let saved = m.get(i, j).clone();
            m.set(i, j, FormalSum::zero());
            let r = verify_psse_1step(&s, &s, &bad, s.depth());
            assert!(!r.holds(), "{name}: zeroing family {family} index {k} went unnoticed");
            assert!(r.first_failure().unwrap().level <= k / 2, "{name}: failure reported after index {k}");
            let m = match family {
                0 => &mut bad.p[k],
                1 => &mut bad.q[k],
                2 => &mut bad.x[k],
                _ => &mut bad.y[k],
            };
            m.set(i, j, saved);
            assert!(verify_psse_1step(&s, &s, &bad, s.depth()).holds());
            assert!(verify_sse_1step(&s, &s, &psse_to_sse(&bad).unwrap(), s.depth()).holds());
        }
    }
}

/// A bipartite symbolic matrix `[[0, B], [C, 0]]` with distinct symbols
/// `c1, c2, …` in `B` and `d1, d2, …` in `C`, no zero lines.
fn bipartite_matrix(n1: usize, n2: usize, bits: &[bool]) -> Option<SymbolicMatrix> {
    let n = n1 + n2;
    let mut rows = vec![vec![FormalSum::zero(); n]; n];
    let (mut kc, mut kd) = (0, 0);
    let mut bit = bits.iter();
    for i in 0..n {
        for j in 0..n {
            let crossing = (i < n1) != (j < n1);
            if crossing && *bit.next()? {
                let name = if i < n1 {
                    kc += 1;
                    format!("c{kc}")
                } else {
                    kd += 1;
                    format!("d{kd}")
                };
                rows[i][j] = FormalSum::symbol(Symbol::atom(&name));
            }
        }
    }
    let m = SymbolicMatrix::from_rows(rows).ok()?;
    let zero_line = (0..n).any(|k| (0..n).all(|j| m.get(k, j).is_zero()) || (0..n).all(|i| m.get(i, k).is_zero()));
    (!zero_line).then_some(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_bipartite_splits_are_equivalent(
        n1 in 1usize..3,
        n2 in 1usize..3,
        bits in proptest::collection::vec(proptest::bool::weighted(0.8), 8),
    ) {
        let Some(a) = bipartite_matrix(n1, n2, &bits) else { return Ok(()) };
        let s = sft_smb(&a, 8, SftAlphabets::Common).unwrap();
        let bip = detect_bipartite(&s).expect("structure of [[0, B], [C, 0]]");
        prop_assert!(block_exchanges_hold(&bip));
        let split = bipartite_split(&s, &bip).unwrap();
        prop_assert!(validate_smb(&split.cd).is_valid());
        prop_assert!(validate_smb(&split.dc).is_valid());
        let r = verify_psse_1step(&split.cd, &split.dc, &split.witness, 4);
        prop_assert!(r.holds(), "{}", r);
        let sse = psse_to_sse(&split.witness).unwrap();
        prop_assert!(verify_sse_1step(&split.cd, &split.dc, &sse, 4).holds());
        let code = conjugacy_block_map(&split.cd, &split.dc, &split.witness).unwrap();
        let report = check_code(&split.cd, &split.dc, &code, 4).unwrap();
        prop_assert!(report.holds(), "{:?}", report.violations);
    }
}
