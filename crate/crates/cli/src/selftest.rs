//! Seeded property suites that run without the test harness.

use std::fmt;

use bisys_bisystem::{
    fixtures, from_lambda_graph_system, validate, Edge, LambdaGraphBisystem, LambdaGraphSystem, Side,
};
use bisys_core::{FormalSum, Symbol, SymbolicMatrix, Word};
use bisys_ktheory::{smith_normal_form, IntMatrix};
use bisys_smb::{from_smb, sft_smb, to_smb, validate_smb, SftAlphabets};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.cases - self.failures.len().min(self.cases);
        write!(f, "{}: {ok}/{} {}", self.name, self.cases, if self.passed() { "pass" } else { "FAIL" })?;
        for x in self.failures.iter().take(5) {
            write!(f, "\n  {x}")?;
        }
        Ok(())
    }
}

fn atoms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| Symbol::atom(n)).collect()
}

fn random_sum(rng: &mut ChaCha8Rng, letters: &[Symbol], word_len: usize, max_terms: usize) -> FormalSum {
    let n = rng.gen_range(0..=max_terms);
    FormalSum::from_words(
        (0..n).map(|_| (0..word_len).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect::<Word>()),
    )
}

/// `κ(κ(x)) = x` on sums of two-letter words and of pair symbols.
pub fn kappa_involution(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = atoms(&["a", "b", "c", "x", "y"]);
    let pairs: Vec<Symbol> =
        letters.iter().flat_map(|u| letters.iter().map(move |v| Symbol::pair(u.clone(), v.clone()))).collect();
    let mut failures = Vec::new();
    for _ in 0..cases {
        let x =
            if rng.gen_bool(0.5) { random_sum(&mut rng, &letters, 2, 4) } else { random_sum(&mut rng, &pairs, 1, 4) };
        match x.kappa().and_then(|k| k.kappa()) {
            Ok(back) if back == x => {}
            other => failures.push(format!("{x}: {other:?}")),
        }
    }
    SuiteResult { name: "kappa involution", cases, failures }
}

/// Indices of the `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn minor_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&IntMatrix::from_rows(&sub).determinant());
        }
    }
    g
}

/// `U·M·V = D` exactly, `U` and `V` unimodular, and `d₁⋯d_k` equal to the
/// gcd of the `k × k` minors, on random matrices up to `6 × 6`.
pub fn smith_normal_form_oracle(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        if s.u.mul(&m).mul(&s.v) != s.d || !s.d.is_diagonal() || !s.u.is_unimodular() || !s.v.is_unimodular() {
            failures.push(format!("{rows:?}: not an exact unimodular diagonalization"));
            continue;
        }
        let f = s.invariant_factors();
        let mut product = BigInt::one();
        for k in 1..=r.min(c) {
            let g = minor_gcd(&rows, k);
            let expected = if k <= f.len() {
                product *= &f[k - 1];
                product.clone()
            } else {
                BigInt::zero()
            };
            if g != expected {
                failures.push(format!("{rows:?}: minors of order {k} have gcd {g}, factors give {expected}"));
                break;
            }
        }
    }
    SuiteResult { name: "smith normal form", cases, failures }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, letters: &[Symbol]) -> SymbolicMatrix {
    let cells = (0..rows).map(|_| (0..cols).map(|_| random_sum(rng, letters, 1, 2)).collect()).collect();
    SymbolicMatrix::from_rows(cells).expect("rectangular")
}

/// The matrix product against a plain triple loop over terms.
pub fn symbolic_product(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = atoms(&["a", "b", "c"]);
    let right = atoms(&["x", "y", "z"]);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let (n, k, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(&mut rng, n, k, &left);
        let b = random_matrix(&mut rng, k, m, &right);
        let product = a.mul(&b).expect("shapes chain");
        for i in 0..n {
            for j in 0..m {
                let mut words = Vec::new();
                for t in 0..k {
                    for u in a.get(i, t).terms() {
                        for v in b.get(t, j).terms() {
                            words.push([u.as_slice(), v.as_slice()].concat());
                        }
                    }
                }
                if product.get(i, j) != &FormalSum::from_words(words) {
                    failures.push(format!("cell ({i},{j}) of {a:?} times {b:?}"));
                }
            }
        }
    }
    SuiteResult { name: "symbolic product", cases, failures }
}

/// Fixture bisystems used by the validator and transpose suites.
pub fn corpus() -> Vec<LambdaGraphBisystem> {
    let lgs = LambdaGraphSystem::from_matrix(&[vec![1, 1], vec![1, 0]], 5).expect("golden mean graph");
    let a = SymbolicMatrix::parse_rows(&[&["a", "b"], &["c", "0"]]);
    vec![
        fixtures::full_shift(2, 5),
        fixtures::full_shift(3, 4),
        fixtures::golden_mean(5),
        fixtures::even_shift(5),
        from_lambda_graph_system(&lgs).expect("valid system"),
        from_smb(&sft_smb(&a, 4, SftAlphabets::Common).expect("sft")).expect("valid smb"),
    ]
}

/// Deletes, relabels, retargets or adds one edge.
pub fn mutate(b: &LambdaGraphBisystem, rng: &mut ChaCha8Rng) -> LambdaGraphBisystem {
    let sizes = b.level_sizes().to_vec();
    let mut minus: Vec<Vec<Edge>> = (0..b.depth()).map(|l| b.minus_edges(l).to_vec()).collect();
    let mut plus: Vec<Vec<Edge>> = (0..b.depth()).map(|l| b.plus_edges(l).to_vec()).collect();
    let l = rng.gen_range(0..b.depth());
    let side = if rng.gen_bool(0.5) { Side::Minus } else { Side::Plus };
    let labels: Vec<Symbol> = b.alphabet(side).iter().cloned().collect();
    let (edges, src_n, tgt_n) = match side {
        Side::Minus => (&mut minus[l], sizes[l + 1], sizes[l]),
        Side::Plus => (&mut plus[l], sizes[l], sizes[l + 1]),
    };
    let k = rng.gen_range(0..edges.len());
    match rng.gen_range(0..4) {
        0 if edges.len() > 1 => {
            edges.remove(k);
        }
        1 => edges[k].label = labels[rng.gen_range(0..labels.len())].clone(),
        2 => edges[k].target = rng.gen_range(0..tgt_n),
        _ => edges.push(Edge {
            source: rng.gen_range(0..src_n),
            target: rng.gen_range(0..tgt_n),
            label: labels[rng.gen_range(0..labels.len())].clone(),
        }),
    }
    LambdaGraphBisystem::new(sizes, minus, plus).expect("mutation keeps endpoints in range")
}

/// `validate` and `validate_smb` agree on the corpus and on `cases`
/// single-edge mutations of it.
pub fn validator_agreement(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus = corpus();
    let mut failures = Vec::new();
    let mut check = |b: &LambdaGraphBisystem, what: String| {
        let (g, m) = (validate(b).is_valid(), validate_smb(&to_smb(b)).is_valid());
        if g != m {
            failures.push(format!("{what}: graph says {g}, matrices say {m}"));
        }
    };
    for (k, b) in corpus.iter().enumerate() {
        check(b, format!("fixture {k}"));
    }
    for n in 0..cases {
        let b = mutate(&corpus[n % corpus.len()], &mut rng);
        check(&b, format!("mutation {n} of fixture {}", n % corpus.len()));
    }
    SuiteResult { name: "validate agrees with validate_smb", cases: corpus.len() + cases, failures }
}

/// Transposing twice is the identity, on the corpus and on mutations.
pub fn transpose_involution(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus = corpus();
    let mut failures = Vec::new();
    for n in 0..cases {
        let base = &corpus[n % corpus.len()];
        let b = if n < corpus.len() { base.clone() } else { mutate(base, &mut rng) };
        if b.transpose().transpose() != b {
            failures.push(format!("case {n}"));
        }
    }
    SuiteResult { name: "transpose involution", cases, failures }
}

/// Every suite, each with its own stream derived from `seed`.
pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    vec![
        kappa_involution(seed, cases),
        smith_normal_form_oracle(seed.wrapping_add(1), cases),
        symbolic_product(seed.wrapping_add(2), cases),
        validator_agreement(seed.wrapping_add(3), cases),
        transpose_involution(seed.wrapping_add(4), cases),
    ]
}
