use bisys_bisystem::{fixtures, from_lambda_graph_system, LambdaGraphBisystem, LambdaGraphSystem, Side};
use bisys_canonical::canonical_bisystem;
use bisys_ktheory::{build_ladder, ck_oracle, k_groups, smith_normal_form, FgAbelianGroup, IntMatrix};
use bisys_subshift::{LabeledGraph, SftMatrix, SubshiftPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn import(a: &[Vec<u32>], depth: usize) -> LambdaGraphBisystem {
    from_lambda_graph_system(&LambdaGraphSystem::from_matrix(a, depth).unwrap()).unwrap()
}

/// Determinant by cofactor expansion along the first row.
fn laplace(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * laplace(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

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

/// `d₁⋯d_k = gcd` of the `k × k` minors.
fn minor_gcds(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<BigInt>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                    g = g.gcd(&laplace(&sub));
                }
            }
            g
        })
        .collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_exact(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(s.u.determinant().magnitude().is_one());
        prop_assert!(s.v.determinant().magnitude().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[0] > BigInt::zero() && w[1].is_multiple_of(&w[0]));
        }
        let mut product = BigInt::one();
        for (k, g) in minor_gcds(&rows).into_iter().enumerate() {
            if k < f.len() {
                product *= &f[k];
                prop_assert_eq!(&g, &product);
            } else {
                prop_assert!(g.is_zero());
            }
        }
    }
}

#[test]
fn bareiss_agrees_with_laplace() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(IntMatrix::from_rows(&rows).determinant(), laplace(&big));
    }
}

fn irreducible(a: &[Vec<u32>]) -> bool {
    let n = a.len();
    (0..n).all(|s| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if a[i][j] > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&x| x)
    })
}

fn random_irreducible(seed: u64, n: usize) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.5) as u32).collect()).collect();
        if irreducible(&a) {
            return a;
        }
    }
}

#[test]
fn imports_match_the_cuntz_krieger_groups() {
    let mut cases: Vec<Vec<Vec<u32>>> = vec![
        vec![vec![2]],
        vec![vec![3]],
        vec![vec![1, 1], vec![1, 0]],
        vec![vec![1, 1], vec![1, 1]],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 0, 0]],
        vec![vec![2, 1], vec![1, 0]],
    ];
    cases.extend((1..=4).map(|seed| random_irreducible(seed, 3)));
    cases.push(random_irreducible(9, 4));
    for a in &cases {
        let r = k_groups(&import(a, 6), Side::Minus, 6).unwrap();
        assert!(r.stabilized, "{a:?}\n{r}");
        assert_eq!((r.k0().clone(), r.k1().clone()), ck_oracle(a).unwrap(), "{a:?}");
    }
    let (k0, k1) = ck_oracle(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!((k0, k1), (FgAbelianGroup::free(1), FgAbelianGroup::free(1)));
}

#[test]
fn plus_side_kernels_contain_the_constants() {
    for a in [vec![vec![2]], vec![vec![1, 1], vec![1, 0]], random_irreducible(3, 3)] {
        let ladder = build_ladder(&import(&a, 5), Side::Plus, 5).unwrap();
        assert!(ladder.iota_refines());
        for l in 0..5 {
            let ones = vec![BigInt::one(); ladder.dimension(l)];
            assert!(ladder.difference(l).mul_vec(&ones).iter().all(Zero::is_zero), "{a:?} level {l}");
        }
        let r = k_groups(&import(&a, 5), Side::Plus, 5).unwrap();
        assert!(r.levels.iter().all(|lv| lv.k1.free_rank >= 1));
    }
}

fn canonical(p: SubshiftPresentation, depth: usize) -> LambdaGraphBisystem {
    canonical_bisystem(&p, depth).unwrap().bisystem
}

#[test]
fn canonical_ladders_are_coherent() {
    let full2 = SubshiftPresentation::Sft(SftMatrix::numbered(vec![vec![1, 1], vec![1, 1]]).unwrap());
    let golden = SubshiftPresentation::Sft(SftMatrix::numbered(vec![vec![1, 1], vec![1, 0]]).unwrap());
    let even =
        SubshiftPresentation::Sofic(LabeledGraph::from_triples(2, &[(0, 0, "a"), (0, 1, "b"), (1, 0, "b")]).unwrap());
    let b = canonical(full2, 5);
    let ladder = build_ladder(&b, Side::Minus, 5).unwrap();
    for l in 0..=5 {
        assert_eq!(ladder.dimension(l), 1 << l);
    }
    for b in [b, canonical(golden, 5), canonical(even, 4), fixtures::golden_mean(5)] {
        for side in [Side::Minus, Side::Plus] {
            let depth = b.depth();
            let ladder = build_ladder(&b, side, depth).unwrap();
            assert!(ladder.iota_refines());
            for m in &ladder.rho {
                assert!((0..m.rows()).flat_map(|r| m.row(r)).all(|x| *x >= BigInt::zero()));
            }
            let r = k_groups(&b, side, depth).unwrap();
            for lv in &r.levels[..depth - 1] {
                assert!(
                    lv.k0_map.unwrap().well_defined && lv.k1_map.unwrap().well_defined,
                    "{side:?} level {}\n{r}",
                    lv.level
                );
            }
        }
    }
}
