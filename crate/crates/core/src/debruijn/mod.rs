//! Decision procedures on the de Bruijn pair diagram.
//!
//! Configuration pairs `(x, y)` with `F(x) = F(y)` correspond to bi-infinite
//! paths through [`PairGraph`]; `x = y` exactly when the path stays on the
//! diagonal `Δ`. Every structural property of a rule reduces to reachability
//! between `Δ`, the all-quiescent vertex and the cycles of the graph:
//!
//! | property            | violated iff some off-diagonal vertex is …            |
//! |---------------------|-------------------------------------------------------|
//! | injective on `C_f`  | reachable from `(q,q)` and reaches `(q,q)`            |
//! | reversible          | reachable from a cycle and reaches a cycle            |
//! | left-closing        | reachable from `Δ` and reaches a cycle                |
//! | right-closing       | reachable from a cycle and reaches `Δ`                |
//!
//! A rule is open iff it is left- and right-closing.

mod classify;
mod dot;
mod graph;
mod preimage;
mod witness;

pub use classify::{
    classify, classify_graph, confinement, inverse_neighborhood, lemma_neighborhood, rough_confinement, Confinement,
    PropertyReport,
};
pub use dot::export_dot;
pub use graph::{PairGraph, Vertex, DEFAULT_VERTEX_CAP};
pub use preimage::{preimages, preimages_in};
pub use witness::{find_pump_cycle, pump, pump_witness, Orientation, PumpCycle, WitnessPair};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeBruijnError {
    #[error("pair diagram for {alphabet} symbols and overlap {overlap} exceeds {cap} vertices")]
    GraphTooLarge {
        alphabet: usize,
        overlap: usize,
        cap: usize,
    },
    #[error("rule is not open")]
    NotOpen,
    #[error("rule is open: no pumped witness exists")]
    RuleIsOpen,
    #[error("rule is not injective on finite configurations")]
    RuleNotInjective,
}
