use serde::Serialize;

use crate::ca::{Config, Region, Rule};

use super::classify::classify_graph;
use super::graph::{PairGraph, Vertex};
use super::DeBruijnError;

/// Which way an off-diagonal cycle connects to the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// A cycle leads into `Δ`: `x_k = …q v^k w q…`. Image differences sit at
    /// the left end, the configuration difference recedes to the right.
    CycleToDiagonal,
    /// `Δ` leads into a cycle: `x_k = …q w v^k q…`. Mirror image.
    DiagonalToCycle,
}

/// An off-diagonal cycle together with a connector to `(q, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpCycle {
    pub orientation: Orientation,
    /// Closed walk starting at the anchor vertex; the edge back to the anchor
    /// is implied.
    pub cycle: Vec<Vertex>,
    /// For [`Orientation::CycleToDiagonal`], the path from the anchor to
    /// `(q, q)` without the anchor; otherwise the path from `(q, q)` to the
    /// anchor without the anchor.
    pub connector: Vec<Vertex>,
}

impl PumpCycle {
    pub fn anchor(&self) -> Vertex {
        self.cycle[0]
    }

    /// Edges in the cycle plus edges in the connector.
    pub fn total_len(&self) -> usize {
        self.cycle.len() + self.connector.len()
    }
}

/// Two finite configurations with distinct preimages but images that differ
/// only on a small fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub x: Config,
    pub y: Config,
    /// Cells where `F(x) ≠ F(y)`.
    pub diff_set: Region,
    /// The configuration difference farthest from `diff_set`: the rightmost
    /// cell where `x ≠ y` for [`Orientation::CycleToDiagonal`], the leftmost
    /// one otherwise.
    pub receding_diff: i64,
    pub pump_count: usize,
    pub orientation: Orientation,
    pub cycle_len: usize,
}

/// Finds the shortest off-diagonal cycle connected to `(q, q)` in the given
/// orientation, with cycle plus connector at most `max_len` edges.
///
/// Candidates are ranked by total length, then cycle length, then anchor id.
pub fn find_pump_cycle(g: &PairGraph, orientation: Orientation, max_len: Option<usize>) -> Option<PumpCycle> {
    let q = g.all_quiescent();
    let linked = match orientation {
        Orientation::CycleToDiagonal => g.reaching([q]),
        Orientation::DiagonalToCycle => g.reachable_from([q]),
    };
    let mut best: Option<((usize, usize, Vertex), PumpCycle)> = None;
    for p in g.vertices() {
        if g.is_diagonal(p) || !g.on_cycle(p) || !linked[p as usize] {
            continue;
        }
        let Some(mut cycle) = g.shortest_path(p, |v| v == p, true) else {
            continue;
        };
        cycle.pop();
        let connector = match orientation {
            Orientation::CycleToDiagonal => {
                let mut path = g.shortest_path(p, |v| v == q, false).expect("anchor reaches (q,q)");
                path.remove(0);
                path
            }
            Orientation::DiagonalToCycle => {
                let mut path = g.shortest_path(q, |v| v == p, false).expect("(q,q) reaches anchor");
                path.pop();
                path
            }
        };
        let candidate = PumpCycle {
            orientation,
            cycle,
            connector,
        };
        let total = candidate.total_len();
        if max_len.is_some_and(|m| total > m) {
            continue;
        }
        let key = (total, candidate.cycle.len(), p);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, candidate));
        }
    }
    best.map(|(_, c)| c)
}

/// Builds `(x_k, y_k)` by going around the cycle `k` times.
pub fn pump(g: &PairGraph, rule: &Rule, cycle: &PumpCycle, k: usize) -> WitnessPair {
    assert!(k >= 1, "pump count must be positive");
    let mut path = Vec::new();
    let (x, y) = match cycle.orientation {
        Orientation::CycleToDiagonal => {
            path.push(cycle.anchor());
            for _ in 0..k {
                path.extend(&cycle.cycle[1..]);
                path.push(cycle.anchor());
            }
            path.extend(&cycle.connector);
            let (x, y) = g.spell(&path);
            // first symbol of the first cycle word on cell 0
            (Config::new(0, x), Config::new(0, y))
        }
        Orientation::DiagonalToCycle => {
            path.extend(&cycle.connector);
            path.push(cycle.anchor());
            for _ in 0..k {
                path.extend(&cycle.cycle[1..]);
                path.push(cycle.anchor());
            }
            let (x, y) = g.spell(&path);
            // last spelled symbol on cell -1
            let offset = -(x.len() as i64);
            (Config::new(offset, x), Config::new(offset, y))
        }
    };
    let diff_set = Region::new(rule.step(&x).diff_cells(&rule.step(&y)));
    let diffs = x.diff_cells(&y);
    let receding_diff = match cycle.orientation {
        Orientation::CycleToDiagonal => *diffs.last().expect("x ≠ y"),
        Orientation::DiagonalToCycle => *diffs.first().expect("x ≠ y"),
    };
    WitnessPair {
        x,
        y,
        diff_set,
        receding_diff,
        pump_count: k,
        orientation: cycle.orientation,
        cycle_len: cycle.cycle.len(),
    }
}

/// Pumped witness pair for an injective rule that is not open.
///
/// A cycle leading into `Δ` is preferred; the mirrored construction is used
/// when only the other connection exists.
pub fn pump_witness(rule: &Rule, k: usize) -> Result<WitnessPair, DeBruijnError> {
    let g = PairGraph::build(rule)?;
    let report = classify_graph(&g);
    if report.open {
        return Err(DeBruijnError::RuleIsOpen);
    }
    if !report.injective_finite {
        return Err(DeBruijnError::RuleNotInjective);
    }
    let cycle = find_pump_cycle(&g, Orientation::CycleToDiagonal, None)
        .or_else(|| find_pump_cycle(&g, Orientation::DiagonalToCycle, None))
        .expect("a rule that is not open has a cycle connected to the diagonal");
    Ok(pump(&g, rule, &cycle, k))
}
