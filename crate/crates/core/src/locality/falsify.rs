use num_complex::Complex64;
use serde::Serialize;

use crate::ca::{Alphabet, Config, Region, Rule};
use crate::debruijn::{classify_graph, find_pump_cycle, pump, Orientation, PairGraph, Vertex};
use crate::quantum::{evolve, make_superposition, pure_density, reduce, reduce_sparse, trace_distance};

use super::LocalityError;

/// Largest pump count tried before giving up on a neighborhood.
pub const MAX_PUMP: usize = 4096;

/// How a witness pair was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// An off-diagonal cycle of the pair diagram that meets `Δ` only through
    /// image differences, repeated between quiescent tails.
    Block,
    /// A cycle connected to `(q, q)` through equal-output edges.
    Pumped,
    /// Supplied by the caller.
    Given,
}

/// A pair `x`, `y` with the reductions of `(|x⟩ ± |y⟩)/√2` compared before
/// and after one step.
#[derive(Clone, Debug, PartialEq)]
pub struct FalsifyReport {
    pub x: Config,
    pub y: Config,
    pub neighborhood: Region,
    /// Cells where `F(x) ≠ F(y)`.
    pub region_a: Region,
    /// Cells where `x ≠ y`.
    pub region_b: Region,
    pub a_plus_n: Region,
    /// `‖ρ₊|_{A+N} − ρ₋|_{A+N}‖_F`.
    pub residual: f64,
    /// Trace distance between the evolved reductions on `A`.
    pub evolved_distance: f64,
    pub construction: Construction,
    pub pump_count: usize,
}

impl FalsifyReport {
    /// Whether the pair shows that `F̃` is not local at `A` with this
    /// neighborhood.
    pub fn is_witness(&self, tol: f64) -> bool {
        self.x != self.y && self.residual <= tol && self.evolved_distance >= 0.5
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "x": self.x.format(alphabet),
            "y": self.y.format(alphabet),
            "neighborhood": self.neighborhood,
            "region_a": self.region_a,
            "region_b": self.region_b,
            "a_plus_n": self.a_plus_n,
            "reduction_residual": self.residual,
            "evolved_trace_distance": self.evolved_distance,
            "construction": self.construction,
            "pump_count": self.pump_count,
        })
    }
}

/// Reductions of `ρ± = |φ±⟩⟨φ±|`, `φ± = (|x⟩ ± |y⟩)/√2`, on `A + N` before
/// the step and on `A` after it, where `A` is where the images differ.
pub fn check_witness(
    rule: &Rule,
    x: &Config,
    y: &Config,
    neighborhood: &Region,
) -> Result<FalsifyReport, LocalityError> {
    measure(rule, x, y, neighborhood, Construction::Given, 0)
}

fn measure(
    rule: &Rule,
    x: &Config,
    y: &Config,
    neighborhood: &Region,
    construction: Construction,
    pump_count: usize,
) -> Result<FalsifyReport, LocalityError> {
    let one = Complex64::new(1.0, 0.0);
    let plus = pure_density(&make_superposition([(x.clone(), one), (y.clone(), one)])?)?;
    let minus = pure_density(&make_superposition([(x.clone(), one), (y.clone(), -one)])?)?;
    let region_a = Region::new(rule.step(x).diff_cells(&rule.step(y)));
    let a_plus_n = region_a.sum(neighborhood);
    let residual = reduce_sparse(&plus, &a_plus_n).frobenius_distance(&reduce_sparse(&minus, &a_plus_n))?;
    let alphabet = rule.alphabet();
    let sigma_plus = reduce(&evolve(rule, &plus), &region_a, alphabet)?;
    let sigma_minus = reduce(&evolve(rule, &minus), &region_a, alphabet)?;
    Ok(FalsifyReport {
        x: x.clone(),
        y: y.clone(),
        neighborhood: neighborhood.clone(),
        region_b: Region::new(x.diff_cells(y)),
        region_a,
        a_plus_n,
        residual,
        evolved_distance: trace_distance(&sigma_plus, &sigma_minus)?,
        construction,
        pump_count,
    })
}

/// The shortest off-diagonal cycle of the pair diagram, as a closed vertex
/// walk starting and ending at its smallest-id vertex.
fn shortest_offdiagonal_cycle(g: &PairGraph) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for p in g.vertices() {
        if g.is_diagonal(p) || !g.on_cycle(p) {
            continue;
        }
        let Some(cycle) = g.shortest_path(p, |v| v == p, true) else {
            continue;
        };
        if cycle.iter().any(|&v| g.is_diagonal(v)) {
            continue;
        }
        if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
            best = Some(cycle);
        }
    }
    best
}

/// `x` and `y` spelled by going `j` times around `cycle`, with the first
/// spelled symbol on cell 0 and quiescent cells elsewhere.
fn block_pair(g: &PairGraph, cycle: &[Vertex], j: usize) -> (Config, Config) {
    let mut path = vec![cycle[0]];
    for _ in 0..j {
        path.extend(&cycle[1..]);
    }
    let (x, y) = g.spell(&path);
    (Config::new(0, x), Config::new(0, y))
}

/// Searches for a pair `x`, `y` of finite configurations whose images differ
/// only on a finite `A`, while `x ≠ y` somewhere outside `A + N`.
///
/// Candidates grow from the smallest: pump counts `1, 2, …` of a cycle
/// connected to `(q, q)` for rules that are not open, and ever longer
/// repetitions of an off-diagonal cycle for open ones.
pub fn falsify_uniform_locality(rule: &Rule, neighborhood: &Region) -> Result<FalsifyReport, LocalityError> {
    let g = PairGraph::build(rule)?;
    let report = classify_graph(&g);
    if !report.injective_finite {
        return Err(LocalityError::RuleNotInjective);
    }
    if report.reversible {
        return Err(LocalityError::RuleReversible);
    }
    let outside = |x: &Config, y: &Config| {
        let a = Region::new(rule.step(x).diff_cells(&rule.step(y)));
        let an = a.sum(neighborhood);
        x.diff_cells(y).iter().any(|c| !an.contains(*c))
    };
    if report.open {
        let cycle =
            shortest_offdiagonal_cycle(&g).expect("an injective rule that is not reversible has an off-diagonal cycle");
        for j in 1..=MAX_PUMP {
            let (x, y) = block_pair(&g, &cycle, j);
            if outside(&x, &y) {
                return measure(rule, &x, &y, neighborhood, Construction::Block, j);
            }
        }
    } else {
        let cycle = find_pump_cycle(&g, Orientation::CycleToDiagonal, None)
            .or_else(|| find_pump_cycle(&g, Orientation::DiagonalToCycle, None))
            .expect("a rule that is not open has a cycle connected to the diagonal");
        for k in 1..=MAX_PUMP {
            let w = pump(&g, rule, &cycle, k);
            if outside(&w.x, &w.y) {
                return measure(rule, &w.x, &w.y, neighborhood, Construction::Pumped, k);
            }
        }
    }
    Err(LocalityError::SearchExhausted { limit: MAX_PUMP })
}
