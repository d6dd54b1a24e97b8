//! Graph export formats. All output is byte-stable for fixed inputs.

use std::fmt::Write;

use crate::graph::KnodelGraph;

use super::docs::AdjacencyDocument;

/// One `u<i> v<j>` line per edge, ordered by `i` then by offset.
pub fn edge_list(g: &KnodelGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Undirected DOT with the two sides as same-rank clusters.
pub fn dot(g: &KnodelGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"W({},{})\" {{", g.delta(), g.order()).unwrap();
    for (name, letter) in [("U", 'u'), ("V", 'v')] {
        writeln!(out, "  subgraph cluster_{name} {{").unwrap();
        writeln!(out, "    label=\"{name}\";").unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for i in 1..=g.half() {
            writeln!(out, "    {letter}{i};").unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn adjacency_json(g: &KnodelGraph) -> String {
    let mut s = AdjacencyDocument::from_graph(g).to_json();
    s.push('\n');
    s
}
