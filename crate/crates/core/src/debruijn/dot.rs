use std::fmt::Write;

use crate::ca::Alphabet;

use super::graph::PairGraph;

/// Graphviz rendering of the pair diagram. Output is deterministic: vertices
/// and edges are listed in id order. Diagonal vertices are filled grey and
/// `(q, q)` is drawn with a double border.
pub fn export_dot(g: &PairGraph, alphabet: &Alphabet) -> String {
    let mut out = String::from("digraph pairs {\n  node [shape=box, fontname=monospace];\n");
    for v in g.vertices() {
        let (u, w) = g.words(v);
        let mut style = Vec::new();
        if g.is_diagonal(v) {
            style.push("style=filled, fillcolor=lightgrey");
        }
        if v == g.all_quiescent() {
            style.push("peripheries=2");
        }
        let extra = if style.is_empty() {
            String::new()
        } else {
            format!(", {}", style.join(", "))
        };
        writeln!(
            out,
            "  v{v} [label=\"{}/{}\"{extra}];",
            alphabet.decode(&u),
            alphabet.decode(&w)
        )
        .unwrap();
    }
    for v in g.vertices() {
        for &t in g.successors(v) {
            writeln!(out, "  v{v} -> v{t};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::catalog;

    #[test]
    fn xor_dot_is_stable() {
        let rule = catalog::xor();
        let g = PairGraph::build(&rule).unwrap();
        let dot = export_dot(&g, rule.alphabet());
        assert_eq!(dot, export_dot(&g, rule.alphabet()));
        assert!(dot.contains("v0 [label=\"0/0\", style=filled, fillcolor=lightgrey, peripheries=2]"));
        assert_eq!(dot.matches("->").count(), g.edge_count());
    }
}
