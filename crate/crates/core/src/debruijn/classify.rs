use std::collections::VecDeque;

use serde::Serialize;

use crate::ca::{Config, Region, Rule};

use super::graph::{PairGraph, Vertex};
use super::DeBruijnError;

/// Structural properties of a rule, read off its pair diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub injective_finite: bool,
    pub reversible: bool,
    pub left_closing: bool,
    pub right_closing: bool,
    pub open: bool,
    pub vertex_count: usize,
    /// Strongly connected components that contain a cycle and avoid `Δ`.
    pub offdiagonal_scc_count: usize,
}

pub fn classify(rule: &Rule) -> Result<PropertyReport, DeBruijnError> {
    Ok(classify_graph(&PairGraph::build(rule)?))
}

pub fn classify_graph(g: &PairGraph) -> PropertyReport {
    let q = g.all_quiescent();
    let cycles: Vec<Vertex> = g.vertices().filter(|&v| g.on_cycle(v)).collect();

    let from_q = g.reachable_from([q]);
    let to_q = g.reaching([q]);
    let from_cycle = g.reachable_from(cycles.iter().copied());
    let to_cycle = g.reaching(cycles.iter().copied());
    let from_delta = g.reachable_from(g.diagonal());
    let to_delta = g.reaching(g.diagonal());

    let offdiag = |pred: &dyn Fn(usize) -> bool| g.vertices().filter(|&v| !g.is_diagonal(v)).any(|v| pred(v as usize));
    let injective_finite = !offdiag(&|v| from_q[v] && to_q[v]);
    let reversible = !offdiag(&|v| from_cycle[v] && to_cycle[v]);
    let left_closing = !offdiag(&|v| from_delta[v] && to_cycle[v]);
    let right_closing = !offdiag(&|v| from_cycle[v] && to_delta[v]);
    let open = left_closing && right_closing;

    let mut diag_scc = vec![false; g.scc_count()];
    for d in g.diagonal() {
        diag_scc[g.scc(d) as usize] = true;
    }
    let mut seen = vec![false; g.scc_count()];
    let mut offdiagonal_scc_count = 0;
    for &v in &cycles {
        let c = g.scc(v) as usize;
        if !diag_scc[c] && !seen[c] {
            seen[c] = true;
            offdiagonal_scc_count += 1;
        }
    }

    assert!(!reversible || open, "reversible rule classified as not open");
    assert!(!open || injective_finite, "open rule classified as not injective");

    PropertyReport {
        injective_finite,
        reversible,
        left_closing,
        right_closing,
        open,
        vertex_count: g.vertex_count(),
        offdiagonal_scc_count,
    }
}

/// How far an off-diagonal excursion can reach beyond a region of output
/// differences, for an open rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Confinement {
    /// Longest run of off-diagonal vertices reachable from `Δ`.
    pub left_escape: usize,
    /// Longest run of off-diagonal vertices that can still reach `Δ`.
    pub right_escape: usize,
    overlap: usize,
    window_start: i64,
}

/// Exact escape lengths of an open rule's pair diagram.
pub fn confinement(g: &PairGraph) -> Result<Confinement, DeBruijnError> {
    let from_delta = g.reachable_from(g.diagonal());
    let to_delta = g.reaching(g.diagonal());
    let left: Vec<bool> = g
        .vertices()
        .map(|v| !g.is_diagonal(v) && from_delta[v as usize])
        .collect();
    let right: Vec<bool> = g
        .vertices()
        .map(|v| !g.is_diagonal(v) && to_delta[v as usize])
        .collect();
    Ok(Confinement {
        left_escape: longest_run(g, &left).ok_or(DeBruijnError::NotOpen)?,
        right_escape: longest_run(g, &right).ok_or(DeBruijnError::NotOpen)?,
        overlap: g.overlap(),
        window_start: g.window_start(),
    })
}

/// Number of vertices on the longest path inside `mask`, or `None` when the
/// induced subgraph has a cycle.
fn longest_run(g: &PairGraph, mask: &[bool]) -> Option<usize> {
    let n = g.vertex_count();
    let mut indegree = vec![0usize; n];
    for v in g.vertices().filter(|&v| mask[v as usize]) {
        for &t in g.successors(v) {
            if mask[t as usize] {
                indegree[t as usize] += 1;
            }
        }
    }
    let mut depth = vec![0usize; n];
    let mut queue: VecDeque<Vertex> = g
        .vertices()
        .filter(|&v| mask[v as usize] && indegree[v as usize] == 0)
        .collect();
    for &v in &queue {
        depth[v as usize] = 1;
    }
    let mut visited = 0;
    let mut best = 0;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        best = best.max(depth[v as usize]);
        for &t in g.successors(v) {
            let ts = t as usize;
            if mask[ts] {
                depth[ts] = depth[ts].max(depth[v as usize] + 1);
                indegree[ts] -= 1;
                if indegree[ts] == 0 {
                    queue.push_back(t);
                }
            }
        }
    }
    (visited == mask.iter().filter(|&&b| b).count()).then_some(best)
}

impl Confinement {
    /// Cells on which `x` and `y` may differ when `F(x)` and `F(y)` agree
    /// outside `[first, last]`; `None` means they cannot differ at all.
    pub fn interval(&self, first: i64, last: i64) -> Option<(i64, i64)> {
        let lo = first + self.window_start + self.overlap as i64 - self.left_escape as i64;
        let hi = last + self.window_start + self.right_escape as i64;
        (lo <= hi).then_some((lo, hi))
    }

    /// An inverse neighborhood `N_I` for `region`: whenever `F(x) = F(y)`
    /// outside `region`, `x = y` outside `region + N_I`.
    ///
    /// This is the narrowest interval `N` with `region + N` covering the
    /// confinement interval (ties go to the one closest to the origin), or
    /// `{0}` when `x` and `y` cannot differ.
    pub fn inverse_neighborhood(&self, region: &Region) -> Region {
        let Some((a1, a2)) = region.hull() else {
            return Region::single(0);
        };
        let Some((lo, hi)) = self.interval(a1, a2) else {
            return Region::single(0);
        };
        let covers = |d1: i64, d2: i64| (lo..=hi).all(|c| region.cells().iter().any(|&a| (d1..=d2).contains(&(c - a))));
        let mut best: Option<(i64, i64, i64, i64)> = None;
        for d1 in lo - a2..=hi - a1 {
            for d2 in d1..=hi - a1 {
                let key = (d2 - d1, d1.abs() + d2.abs(), d1, d2);
                if best.is_some_and(|b| (b.0, b.1, b.2) <= (key.0, key.1, key.2)) {
                    continue;
                }
                if covers(d1, d2) {
                    best = Some(key);
                    break;
                }
            }
        }
        let (_, _, d1, d2) = best.expect("the full difference range always covers");
        Region::interval(d1, d2)
    }

    /// How far beyond `support(c)` a preimage of `c` may extend.
    pub fn preimage_halo(&self, c: &Config) -> i64 {
        let Some((a1, a2)) = c.support() else {
            return 0;
        };
        match self.interval(a1, a2) {
            None => 0,
            Some((lo, hi)) => (a1 - lo).max(hi - a2).max(0),
        }
    }
}

/// Exact inverse neighborhood of an open rule at `region`.
pub fn inverse_neighborhood(rule: &Rule, region: &Region) -> Result<Region, DeBruijnError> {
    let g = PairGraph::build(rule)?;
    if !classify_graph(&g).open {
        return Err(DeBruijnError::NotOpen);
    }
    Ok(confinement(&g)?.inverse_neighborhood(region))
}

/// `N_C − N_C + N_I` with `0` added to both `N_C` and `N_I`: a neighborhood
/// at which the linearization of an open rule is local at `region`.
pub fn lemma_neighborhood(rule: &Rule, region: &Region) -> Result<Region, DeBruijnError> {
    let ni = inverse_neighborhood(rule, region)?.union(&Region::single(0));
    let nc = rule.neighborhood_region().union(&Region::single(0));
    Ok(nc.diff(&nc).sum(&ni))
}

/// The coarse confinement interval `[−n−k−l, n+k+l]` with `region ⊆ [−n, n]`,
/// `k` the rule radius and `l` the number of pair-diagram vertices.
pub fn rough_confinement(rule: &Rule, vertex_count: usize, region: &Region) -> (i64, i64) {
    let n = region.cells().iter().map(|c| c.abs()).max().unwrap_or(0);
    let b = n + rule.radius() + vertex_count as i64;
    (-b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{catalog, Alphabet};

    #[test]
    fn xor_properties() {
        let r = classify(&catalog::xor()).unwrap();
        assert!(r.injective_finite);
        assert!(!r.reversible);
        assert!(r.left_closing && r.right_closing && r.open);
        assert_eq!(r.vertex_count, 4);
        assert_eq!(r.offdiagonal_scc_count, 1);
    }

    #[test]
    fn bijective_rules_have_every_property() {
        for rule in [catalog::identity(), catalog::shift(), catalog::negated_shift()] {
            let r = classify(&rule).unwrap();
            assert!(
                r.injective_finite && r.reversible && r.left_closing && r.right_closing && r.open,
                "{}: {r:?}",
                rule.name()
            );
            assert_eq!(r.offdiagonal_scc_count, 0);
        }
    }

    #[test]
    fn and_is_not_injective() {
        let r = classify(&catalog::and()).unwrap();
        assert!(!r.injective_finite && !r.reversible && !r.open);
    }

    #[test]
    fn eca30_is_one_sided() {
        let r = classify(&catalog::elementary(30)).unwrap();
        assert!(r.injective_finite && !r.reversible && !r.open);
        assert!(r.left_closing != r.right_closing);
    }

    #[test]
    fn identity_inverse_neighborhood() {
        for cells in [vec![3], vec![-2, -1]] {
            let ni = inverse_neighborhood(&catalog::identity(), &Region::new(cells)).unwrap();
            assert_eq!(ni, Region::single(0));
        }
        assert_eq!(
            inverse_neighborhood(&catalog::identity(), &Region::single(0)).unwrap(),
            Region::single(0)
        );
    }

    #[test]
    fn shift_inverse_neighborhood_points_right() {
        let ni = inverse_neighborhood(&catalog::shift(), &Region::single(0)).unwrap();
        assert_eq!(ni, Region::single(1));
        let left = Rule::from_fn("left", Alphabet::binary(), &[-1], |w| w[0]).unwrap();
        let ni = inverse_neighborhood(&left, &Region::single(0)).unwrap();
        assert_eq!(ni, Region::single(-1));
    }

    #[test]
    fn xor_inverse_neighborhood_within_rough_bound() {
        let rule = catalog::xor();
        let ni = inverse_neighborhood(&rule, &Region::single(0)).unwrap();
        let (lo, hi) = rough_confinement(&rule, 4, &Region::single(0));
        assert!(ni.cells().iter().all(|c| (lo..=hi).contains(c)));
        assert!(ni.cells().iter().all(|c| (-6..=6).contains(c)));
    }

    #[test]
    fn not_open_is_rejected() {
        assert_eq!(
            inverse_neighborhood(&catalog::elementary(30), &Region::single(0)),
            Err(DeBruijnError::NotOpen)
        );
    }
}
