//! Graphviz export with one colour per hyperplane.

use std::fmt::Write as _;

use cubefold_core::hyperplane::{label, Hyperplanes};
use cubefold_core::Graph;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#393b79", "#637939",
];

pub fn colour(class: usize) -> &'static str {
    PALETTE[class % PALETTE.len()]
}

/// Undirected DOT text. Edges are labelled with their hyperplane and edges of
/// `highlight` classes are drawn thicker.
pub fn export_dot(name: &str, g: &Graph, highlight: &[usize]) -> String {
    let hs = Hyperplanes::new(g);
    let mut s = format!("graph \"{}\" {{\n  node [shape=circle];\n", escape(name));
    for v in g.names() {
        let _ = writeln!(s, "  \"{}\";", escape(v));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = hs.class_of_edge(e);
        let pen = if highlight.contains(&c) { 3 } else { 1 };
        let _ = writeln!(
            s,
            "  \"{}\" -- \"{}\" [label=\"{}\", color=\"{}\", penwidth={}];",
            escape(g.name(u)),
            escape(g.name(v)),
            label(c),
            colour(c),
            pen
        );
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
