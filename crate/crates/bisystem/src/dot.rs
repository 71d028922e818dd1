use std::fmt::Write;

use crate::{vertex_name, LambdaGraphBisystem, Side};

/// Graphviz source showing the two Bratteli diagrams side by side, level 0
/// at the top. Minus edges point up from `V_{l+1}` to `V_l`; plus edges
/// point down.
pub fn to_dot(b: &LambdaGraphBisystem) -> String {
    let mut s = String::new();
    writeln!(s, "digraph bisystem {{").unwrap();
    writeln!(s, "  rankdir=TB;").unwrap();
    writeln!(s, "  node [shape=circle, fontsize=10];").unwrap();
    for side in [Side::Minus, Side::Plus] {
        let p = prefix(side);
        writeln!(s, "  subgraph cluster_{side} {{").unwrap();
        writeln!(s, "    label=\"L{}\";", if side == Side::Minus { "-" } else { "+" }).unwrap();
        for l in 0..=b.depth() {
            let names: Vec<String> = (0..b.level_size(l)).map(|i| format!("{p}_{l}_{i}")).collect();
            for (i, n) in names.iter().enumerate() {
                writeln!(s, "    {n} [label=\"{}\"];", vertex_name(l, i)).unwrap();
            }
            writeln!(s, "    {{ rank=same; {}; }}", names.join("; ")).unwrap();
        }
        for l in 0..b.depth() {
            for e in b.edges(side, l) {
                // Both kinds are written from level l to level l + 1 so that
                // the layout keeps levels in order; dir=back flips the arrow.
                match side {
                    Side::Minus => writeln!(
                        s,
                        "    {p}_{l}_{} -> {p}_{}_{} [label=\"{}\", dir=back];",
                        e.target,
                        l + 1,
                        e.source,
                        e.label
                    ),
                    Side::Plus => {
                        writeln!(s, "    {p}_{l}_{} -> {p}_{}_{} [label=\"{}\"];", e.source, l + 1, e.target, e.label)
                    }
                }
                .unwrap();
            }
        }
        writeln!(s, "  }}").unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

fn prefix(side: Side) -> &'static str {
    match side {
        Side::Minus => "m",
        Side::Plus => "p",
    }
}
