//! Graphviz export of balls and subgraphs.

use std::fmt::Write;

use super::cw::{Component, Subgraph};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders `g` as a DOT digraph. Nodes are named by their canonical key;
/// nodes in `components` are filled with one colour per component
/// (horizon components drawn bold), all other nodes grey.
pub fn to_dot(g: &Subgraph<'_>, graph_name: &str, components: &[Component]) -> String {
    let ball = g.ball();
    let mut color = vec![None; ball.vertex_count()];
    for (i, c) in components.iter().enumerate() {
        for &v in &c.vertices {
            color[v] = Some((PALETTE[i % PALETTE.len()], c.horizon));
        }
    }

    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(graph_name)).unwrap();
    writeln!(out, "    node [shape=circle style=filled fontsize=10]").unwrap();
    for v in g.vertices() {
        let name = escape(&ball.vertex_name(v));
        let (fill, pen) = match color[v] {
            Some((c, true)) => (c, 3),
            Some((c, false)) => (c, 1),
            None => ("#d3d3d3", 1),
        };
        writeln!(
            out,
            "    \"{name}\" [fillcolor=\"{fill}\" penwidth={pen} dist={}]",
            ball.distance(v)
        )
        .unwrap();
    }
    let alphabet = ball.model().alphabet();
    for id in g.edge_ids() {
        let e = ball.edge(id);
        let label = alphabet.name(crate::groups::Letter::pos(e.generator));
        writeln!(
            out,
            "    \"{}\" -> \"{}\" [label=\"{label}\"]",
            escape(&ball.vertex_name(e.tail)),
            escape(&ball.vertex_name(e.head)),
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
