//! Hand-entered bisystems for the full N-shift, the golden mean shift and
//! the even shift, on a common alphabet. Vertex `v_i^l` is index `i - 1`.

use crate::{Edge, LambdaGraphBisystem};

type EdgeList = &'static [(usize, usize, &'static str)];

/// Assembles a bisystem from explicit initial levels followed by a
/// repeating level. Edges are `(source, target, label)` with one-based
/// vertices.
fn assemble(
    sizes: &[usize],
    tail_size: usize,
    minus: &[EdgeList],
    plus: &[EdgeList],
    depth: usize,
) -> LambdaGraphBisystem {
    let level = |list: &[EdgeList], l: usize| -> Vec<Edge> {
        let raw = list[l.min(list.len() - 1)];
        raw.iter().map(|&(s, t, a)| Edge::new(s - 1, t - 1, a)).collect()
    };
    let level_sizes = (0..=depth).map(|l| sizes.get(l).copied().unwrap_or(tail_size)).collect();
    LambdaGraphBisystem::new(
        level_sizes,
        (0..depth).map(|l| level(minus, l)).collect(),
        (0..depth).map(|l| level(plus, l)).collect(),
    )
    .expect("fixture is well formed")
}

/// One vertex per level and edges `a1..aN` on both sides.
pub fn full_shift(n: usize, depth: usize) -> LambdaGraphBisystem {
    let edges: Vec<Edge> = (1..=n).map(|k| Edge::new(0, 0, &format!("a{k}"))).collect();
    LambdaGraphBisystem::new(vec![1; depth + 1], vec![edges.clone(); depth], vec![edges; depth])
        .expect("fixture is well formed")
}

/// Golden mean shift with `a` for α and `b` for β; `bb` is forbidden.
pub fn golden_mean(depth: usize) -> LambdaGraphBisystem {
    const MINUS: [EdgeList; 3] = [
        &[(1, 1, "a"), (2, 1, "a"), (1, 1, "b")],
        &[(1, 1, "a"), (3, 1, "a"), (2, 2, "a"), (4, 2, "a"), (1, 2, "b"), (2, 2, "b")],
        &[(1, 1, "a"), (3, 1, "a"), (2, 2, "a"), (4, 2, "a"), (1, 3, "b"), (2, 4, "b")],
    ];
    const PLUS: [EdgeList; 3] = [
        &[(1, 1, "a"), (1, 2, "a"), (1, 1, "b")],
        &[(1, 1, "a"), (1, 2, "a"), (2, 3, "a"), (2, 4, "a"), (2, 1, "b"), (2, 3, "b")],
        &[(1, 1, "a"), (1, 2, "a"), (3, 3, "a"), (3, 4, "a"), (2, 1, "b"), (4, 3, "b")],
    ];
    assemble(&[1, 2], 4, &MINUS, &PLUS, depth)
}

/// Even shift: blocks of `b` between two `a` have even length. The edges
/// are transcribed as printed; they fail the local property between `V_0`
/// and `V_2` and the follower/predecessor compatibility condition.
pub fn even_shift(depth: usize) -> LambdaGraphBisystem {
    const MINUS: [EdgeList; 4] = [
        &[(1, 1, "a"), (2, 1, "b")],
        &[(1, 1, "a"), (3, 1, "b"), (2, 2, "b")],
        &[(1, 1, "a"), (2, 2, "a"), (3, 1, "b"), (4, 2, "b"), (1, 3, "b")],
        &[(1, 1, "a"), (2, 2, "a"), (3, 1, "b"), (4, 2, "b"), (1, 3, "b"), (2, 4, "b")],
    ];
    const PLUS: [EdgeList; 4] = [
        &[(1, 1, "a"), (1, 2, "b")],
        &[(1, 1, "a"), (1, 2, "b"), (2, 3, "b")],
        &[(1, 1, "a"), (3, 3, "a"), (1, 2, "b"), (2, 1, "b"), (3, 4, "b")],
        &[(1, 1, "a"), (3, 3, "a"), (1, 2, "b"), (2, 1, "b"), (3, 4, "b"), (4, 3, "b")],
    ];
    assemble(&[1, 2, 3], 4, &MINUS, &PLUS, depth)
}
