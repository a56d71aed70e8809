//! Prints the pair diagram of XOR as Graphviz.
//!
//! ```text
//! cargo run --example pair_graph | dot -Tsvg > xor.svg
//! ```

use qca_lab::ca::catalog;
use qca_lab::debruijn::{export_dot, PairGraph};

fn main() {
    let rule = catalog::xor();
    let g = PairGraph::build(&rule).unwrap();
    eprintln!(
        "{} vertices, {} edges, {} components",
        g.vertex_count(),
        g.edge_count(),
        g.scc_count()
    );
    print!("{}", export_dot(&g, rule.alphabet()));
}
