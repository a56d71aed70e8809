use serde::Serialize;

use crate::ca::{Region, Rule};
use crate::debruijn::{classify_graph, find_pump_cycle, pump, Orientation, PairGraph, WitnessPair};

use super::LocalityError;

/// Where Alice sits relative to Bob.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Every cell of Alice's region is left of Bob's cell.
    Left,
    /// Every cell of Alice's region is right of Bob's cell.
    Right,
}

impl Side {
    fn orientation(self) -> Orientation {
        match self {
            Side::Left => Orientation::CycleToDiagonal,
            Side::Right => Orientation::DiagonalToCycle,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SingleSided {
    /// No off-diagonal cycle reaches `(q, q)` on that side within the bound.
    Exhausted { bound: usize },
    Witness {
        pair: WitnessPair,
        /// Configuration difference on the far side of Alice's region.
        bob_cell: i64,
        /// Image-difference cells.
        alice_region: Region,
    },
}

/// Looks for a witness pair whose image differences all lie on one side of a
/// configuration difference, among pair-diagram walks of at most `bound`
/// edges (cycle plus connector).
pub fn single_sided_witness_search(rule: &Rule, side: Side, bound: usize) -> Result<SingleSided, LocalityError> {
    let g = PairGraph::build(rule)?;
    if !classify_graph(&g).injective_finite {
        return Err(LocalityError::RuleNotInjective);
    }
    let Some(cycle) = find_pump_cycle(&g, side.orientation(), Some(bound)) else {
        return Ok(SingleSided::Exhausted { bound });
    };
    for k in 1.. {
        let pair = pump(&g, rule, &cycle, k);
        let bob_cell = pair.receding_diff;
        let clear = match side {
            Side::Left => pair.diff_set.hull().is_none_or(|(_, hi)| hi < bob_cell),
            Side::Right => pair.diff_set.hull().is_none_or(|(lo, _)| lo > bob_cell),
        };
        if clear {
            let alice_region = pair.diff_set.clone();
            return Ok(SingleSided::Witness {
                pair,
                bob_cell,
                alice_region,
            });
        }
    }
    unreachable!("the receding difference moves away by a full cycle per pump")
}
