//! Runs the seven acceptance criteria and prints one verdict line for each.
//! Exits with status 1 if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use bisys_bisystem::{
    fixtures, fpcc_check, from_lambda_graph_system, presented_words, validate, LambdaGraphSystem, Side,
};
use bisys_canonical::{canonical_bisystem, canonical_smb};
use bisys_cli::selftest;
use bisys_core::{Alphabet, FormalSum, Symbol, SymbolicMatrix, Word};
use bisys_equivalence::{
    bipartite_split, check_code, conjugacy_block_map, detect_bipartite, psse_to_sse, trivial_psse_witness,
    verify_psse_1step, verify_sse_1step, PsseWitness,
};
use bisys_ktheory::{build_ladder, ck_oracle, k_groups};
use bisys_smb::{from_smb, sft_smb, smb_isomorphic, to_smb, validate_smb, SftAlphabets, SymbolicMatrixBisystem};
use bisys_subshift::{admissible_words, LabeledGraph, SftMatrix, SubshiftPresentation};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEPTH: usize = 6;

type Outcome = Result<String, Vec<String>>;

/// Collects failure messages; `finish` turns them into an outcome.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    passes: usize,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passes += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(format!("{} checks", self.passes))
        } else {
            Err(self.failures)
        }
    }
}

fn full_shift(n: usize) -> SubshiftPresentation {
    let names: Vec<String> = (1..=n).map(|k| format!("a{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    SubshiftPresentation::Forbidden { alphabet: Alphabet::from_names(&refs), words: vec![] }
}

fn golden() -> SubshiftPresentation {
    SubshiftPresentation::Forbidden {
        alphabet: Alphabet::from_names(&["a", "b"]),
        words: vec![vec![Symbol::atom("b"), Symbol::atom("b")]],
    }
}

fn even() -> SubshiftPresentation {
    SubshiftPresentation::Sofic(LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "b"), (1, 0, "b")]).unwrap())
}

fn alternation() -> SubshiftPresentation {
    SubshiftPresentation::Sft(
        SftMatrix::new(vec![Symbol::atom("a"), Symbol::atom("b")], vec![vec![0, 1], vec![1, 0]]).unwrap(),
    )
}

fn three_state() -> SubshiftPresentation {
    SubshiftPresentation::Sft(SftMatrix::numbered(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap())
}

fn criterion_1() -> Outcome {
    let mut c = Check::default();
    for n in [2, 3] {
        match canonical_bisystem(&full_shift(n), DEPTH) {
            Ok(build) => {
                let b = &build.bisystem;
                c.expect(b.level_sizes() == vec![1; DEPTH + 1].as_slice(), || {
                    format!("full {n}-shift sizes {:?}", b.level_sizes())
                });
                let edges_ok = (0..DEPTH).all(|l| b.minus_edges(l).len() == n && b.plus_edges(l).len() == n);
                c.expect(edges_ok, || format!("full {n}-shift does not have {n} edges per side and level"));
                let iso = smb_isomorphic(&to_smb(b), &to_smb(&fixtures::full_shift(n, DEPTH)));
                c.expect(iso.is_some(), || format!("full {n}-shift is not isomorphic to the printed bisystem"));
            }
            Err(e) => c.expect(false, || format!("full {n}-shift: {e}")),
        }
    }
    for (name, p, printed, sizes) in [
        ("golden mean", golden(), fixtures::golden_mean(DEPTH), vec![1, 2, 4, 4, 4, 4, 4]),
        ("even shift", even(), fixtures::even_shift(DEPTH), vec![1, 2, 3, 4, 4, 4, 4]),
    ] {
        match canonical_bisystem(&p, DEPTH) {
            Ok(build) => {
                let got = build.bisystem.level_sizes().to_vec();
                c.expect(got == sizes, || format!("{name}: canonical sizes {got:?}, printed {sizes:?}"));
                let iso = smb_isomorphic(&to_smb(&build.bisystem), &to_smb(&printed));
                c.expect(iso.is_some(), || {
                    format!("{name}: canonical build is not isomorphic to the printed bisystem")
                });
            }
            Err(e) => c.expect(false, || format!("{name}: {e}")),
        }
    }
    c.finish()
}

fn criterion_2() -> Outcome {
    let mut c = Check::default();
    let cases = [
        ("full 2-shift", full_shift(2)),
        ("full 3-shift", full_shift(3)),
        ("golden mean", golden()),
        ("even shift", even()),
        ("alternating shift", alternation()),
        ("3-state SFT", three_state()),
    ];
    for (name, p) in cases {
        let build = match canonical_bisystem(&p, DEPTH) {
            Ok(b) => b,
            Err(e) => {
                c.expect(false, || format!("{name}: {e}"));
                continue;
            }
        };
        let b = &build.bisystem;
        let report = validate(b);
        c.expect(report.is_valid(), || format!("{name}: {report}"));
        c.expect(fpcc_check(b).holds(), || format!("{name}: FPCC fails"));
        for n in 1..DEPTH {
            let language: BTreeSet<Word> = admissible_words(&p, n).unwrap().into_iter().collect();
            for side in [Side::Minus, Side::Plus] {
                let words: BTreeSet<Word> = presented_words(b, side, n).unwrap().into_iter().collect();
                c.expect(words == language, || {
                    format!("{name}: {side:?} words of length {n} differ from the language")
                });
            }
        }
    }
    c.finish()
}

fn sum(s: &str) -> FormalSum {
    s.parse().unwrap()
}

/// The edge-shift matrices of a square matrix `A` with distinct non-zero
/// cells, on pairs `(r, k)` in row-major order: `M⁻` has `A(c, r)` at
/// `((r, k), (c, k))` and `M⁺` has `A(k, k')` at `((r, k), (r, k'))`.
fn edge_shift_oracle(a: &[Vec<&str>], mark: (&str, &str)) -> (SymbolicMatrix, SymbolicMatrix) {
    let n = a.len();
    let mut minus = SymbolicMatrix::zero(n * n, n * n);
    let mut plus = SymbolicMatrix::zero(n * n, n * n);
    for r in 0..n {
        for k in 0..n {
            for c in 0..n {
                minus.set(r * n + k, c * n + k, sum(&format!("{}{}", a[c][r], mark.0)));
                plus.set(r * n + k, r * n + c, sum(&format!("{}{}", a[k][c], mark.1)));
            }
        }
    }
    (minus, plus)
}

fn criterion_3() -> Outcome {
    let mut c = Check::default();
    let a = SymbolicMatrix::parse_rows(&[&["a", "b"], &["c", "d"]]);
    let s = sft_smb(&a, DEPTH, SftAlphabets::Signed).unwrap();
    let printed_minus = SymbolicMatrix::parse_rows(&[
        &["a⁻", "0", "c⁻", "0"],
        &["0", "a⁻", "0", "c⁻"],
        &["b⁻", "0", "d⁻", "0"],
        &["0", "b⁻", "0", "d⁻"],
    ]);
    let printed_plus = SymbolicMatrix::parse_rows(&[
        &["a⁺", "b⁺", "0", "0"],
        &["c⁺", "d⁺", "0", "0"],
        &["0", "0", "a⁺", "b⁺"],
        &["0", "0", "c⁺", "d⁺"],
    ]);
    for l in 1..DEPTH {
        c.expect(s.minus(l) == &printed_minus, || format!("M⁻ at level {l} is {:?}", s.minus(l)));
        c.expect(s.plus(l) == &printed_plus, || format!("M⁺ at level {l} is {:?}", s.plus(l)));
    }

    let three = vec![vec!["p", "q", "r"], vec!["s", "t", "u"], vec!["v", "w", "x"]];
    let rows: Vec<&[&str]> = three.iter().map(Vec::as_slice).collect();
    let s3 = sft_smb(&SymbolicMatrix::parse_rows(&rows), 3, SftAlphabets::Signed).unwrap();
    let (m, p) = edge_shift_oracle(&three, ("⁻", "⁺"));
    c.expect(s3.minus(1) == &m && s3.plus(1) == &p, || "3×3 edge-shift matrices differ from the block formula".into());

    for smb in [&s, &s3] {
        for l in 0..smb.depth() - 1 {
            let left = smb.minus(l).mul(smb.plus(l + 1)).and_then(|m| m.kappa());
            let right = smb.plus(l).mul(smb.minus(l + 1));
            c.expect(left.is_ok() && left == right, || format!("κ-product equality fails at level {l}"));
        }
    }

    for cells in [vec![vec!["a", "b"], vec!["c", "d"]], vec![vec!["a", "b"], vec!["c", "0"]]] {
        let rows: Vec<&[&str]> = cells.iter().map(Vec::as_slice).collect();
        let common = sft_smb(&SymbolicMatrix::parse_rows(&rows), DEPTH, SftAlphabets::Common).unwrap();
        let b = from_smb(&common).unwrap();
        c.expect(validate(&b).is_valid(), || format!("{cells:?}: identified bisystem is invalid"));
        c.expect(fpcc_check(&b).holds(), || format!("{cells:?}: FPCC fails with identified symbols"));
    }
    c.finish()
}

fn witness_holds(
    c: &mut Check,
    name: &str,
    sm: &SymbolicMatrixBisystem,
    sn: &SymbolicMatrixBisystem,
    w: &PsseWitness,
    depth: usize,
) {
    let r = verify_psse_1step(sm, sn, w, depth);
    c.expect(r.holds(), || format!("{name}: {r}"));
    if !r.holds() {
        return;
    }
    match psse_to_sse(w) {
        Ok(sse) => {
            let r = verify_sse_1step(sm, sn, &sse, depth);
            c.expect(r.holds(), || format!("{name}, converted: {r}"));
        }
        Err(e) => c.expect(false, || format!("{name}: conversion failed: {e}")),
    }
    match conjugacy_block_map(sm, sn, w) {
        Ok(code) => {
            let r = check_code(sm, sn, &code, 6).unwrap();
            c.expect(r.holds(), || format!("{name}: 2-block code violations {:?}", r.violations));
        }
        Err(e) => c.expect(false, || format!("{name}: {e}")),
    }
}

fn criterion_4() -> Outcome {
    let mut c = Check::default();
    let depth = 7;
    let fixtures = [
        ("full 2-shift", to_smb(&fixtures::full_shift(2, depth))),
        ("full 3-shift", to_smb(&fixtures::full_shift(3, depth))),
        ("golden mean", to_smb(&fixtures::golden_mean(depth))),
        ("even shift", canonical_smb(&even(), depth).unwrap()),
        ("3-state SFT", canonical_smb(&three_state(), depth).unwrap()),
    ];
    for (name, s) in &fixtures {
        match trivial_psse_witness(s) {
            Ok(w) => witness_holds(&mut c, name, s, s, &w, depth),
            Err(e) => c.expect(false, || format!("{name}: {e}")),
        }
    }

    // The trivial code on the golden mean against its forbidden-word language.
    let s = &fixtures[2].1;
    let code = conjugacy_block_map(s, s, &trivial_psse_witness(s).unwrap()).unwrap();
    for n in 2..=6 {
        let below: BTreeSet<Word> = admissible_words(&golden(), n - 1).unwrap().into_iter().collect();
        for x in admissible_words(&golden(), n).unwrap() {
            let y = code.forward.apply(&x).ok();
            c.expect(y.as_ref().is_some_and(|y| below.contains(y)), || {
                format!("golden mean code sends {x:?} to {y:?}")
            });
        }
    }

    let alternating =
        sft_smb(&SymbolicMatrix::parse_rows(&[&["0", "a"], &["b", "0"]]), 2 * depth, SftAlphabets::Common).unwrap();
    match detect_bipartite(&alternating) {
        Some(bip) => {
            let split = bipartite_split(&alternating, &bip).unwrap();
            for (name, t, sym) in [("CD", &split.cd, "(a.b)"), ("DC", &split.dc, "(b.a)")] {
                let one = SymbolicMatrix::parse_rows(&[&[sym]]);
                let full_one =
                    t.depth() == depth && t.minus_matrices().iter().chain(t.plus_matrices()).all(|m| m == &one);
                c.expect(full_one, || format!("{name} half is not a full 1-shift"));
                c.expect(validate_smb(t).is_valid(), || format!("{name} half is invalid"));
            }
            witness_holds(&mut c, "bipartite split", &split.cd, &split.dc, &split.witness, depth);
        }
        None => c.expect(false, || "alternating shift is not detected as bipartite".into()),
    }
    c.finish()
}

fn strongly_connected(a: &[Vec<u32>]) -> bool {
    let n = a.len();
    (0..n).all(|start| {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if a[i][j] > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

/// A random irreducible 0/1 matrix of size 3 that is not a permutation.
fn random_irreducible(seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<Vec<u32>> = (0..3).map(|_| (0..3).map(|_| u32::from(rng.gen_bool(0.5))).collect()).collect();
        let edges: u32 = a.iter().flatten().sum();
        if strongly_connected(&a) && edges > 3 {
            return a;
        }
    }
}

fn imports() -> Vec<Vec<Vec<u32>>> {
    vec![vec![vec![2]], vec![vec![3]], vec![vec![1, 1], vec![1, 0]], random_irreducible(2026)]
}

fn criterion_5() -> Outcome {
    let mut c = Check::default();
    for a in imports() {
        let b = from_lambda_graph_system(&LambdaGraphSystem::from_matrix(&a, DEPTH).unwrap()).unwrap();
        let k = k_groups(&b, Side::Minus, DEPTH).unwrap();
        let (coker, ker) = ck_oracle(&a).unwrap();
        c.expect(k.stabilized, || format!("{a:?}: minus side does not stabilize within depth {DEPTH}"));
        c.expect(k.k0() == &coker && k.k1() == &ker, || {
            format!("{a:?}: K0 = {}, K1 = {}; oracle gives {coker}, {ker}", k.k0(), k.k1())
        });
    }
    let known = [(vec![vec![3]], "Z/2Z", "0"), (vec![vec![1, 1], vec![1, 0]], "0", "0"), (vec![vec![2]], "0", "0")];
    for (a, k0, k1) in known {
        let (coker, ker) = ck_oracle(&a).unwrap();
        c.expect(coker.to_string() == k0 && ker.to_string() == k1, || format!("{a:?}: oracle gives {coker}, {ker}"));
    }
    c.finish()
}

fn criterion_6() -> Outcome {
    let mut c = Check::default();
    for a in imports() {
        let b = from_lambda_graph_system(&LambdaGraphSystem::from_matrix(&a, DEPTH).unwrap()).unwrap();
        let ladder = build_ladder(&b, Side::Plus, DEPTH).unwrap();
        for l in 0..ladder.depth() {
            let f = ladder.difference(l);
            let ones = vec![BigInt::from(1); f.cols()];
            c.expect(f.mul_vec(&ones).iter().all(Zero::is_zero), || {
                format!("{a:?}: constant vector not in the kernel at level {l}")
            });
        }
        let k = k_groups(&b, Side::Plus, DEPTH).unwrap();
        for lv in &k.levels {
            c.expect(lv.k1.free_rank >= 1, || format!("{a:?}: K1 at level {} is {}", lv.level, lv.k1));
        }
    }
    c.finish()
}

fn criterion_7() -> Outcome {
    let mut c = Check::default();
    let seed = 20_261_016;
    let suites = [
        selftest::kappa_involution(seed, 200),
        selftest::smith_normal_form_oracle(seed + 1, 200),
        selftest::symbolic_product(seed + 2, 200),
        selftest::validator_agreement(seed + 3, 100),
        selftest::transpose_involution(seed + 4, 100),
    ];
    for s in suites {
        c.expect(s.passed(), || s.to_string());
    }
    c.finish()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("canonical constructions match the explicit bisystems", criterion_1),
        ("canonical builds satisfy the axioms and present the language", criterion_2),
        ("SFT construction", criterion_3),
        ("equivalence suite", criterion_4),
        ("K-theory of graph imports", criterion_5),
        ("constant vector in the plus-side K1 tower", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(summary) => println!("criterion {}: PASS  {name} ({summary})", k + 1),
            Err(failures) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}", k + 1);
                for f in failures {
                    println!("    {f}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
