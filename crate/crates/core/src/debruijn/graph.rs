use std::collections::VecDeque;

use crate::ca::{Rule, Symbol};

use super::DeBruijnError;

/// Default cap on the number of pair-diagram vertices.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

pub type Vertex = u32;

/// The de Bruijn pair diagram of a rule.
///
/// A vertex is a pair `(u, v)` of overlap words of length `m = max(span-1, 1)`.
/// Vertex `V_i` of a configuration pair `(x, y)` holds `x` and `y` on cells
/// `[i+lo, i+lo+m-1]`, where `lo` is the smallest neighborhood offset. The
/// edge `V_i → V_{i+1}` spans cells `[i+lo, i+lo+m]` and therefore determines
/// output cell `i`; it exists iff both windows produce the same output.
#[derive(Clone, Debug)]
pub struct PairGraph {
    alphabet_size: usize,
    overlap: usize,
    window_start: i64,
    words: usize,
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
    scc: Vec<u32>,
    scc_count: usize,
    cyclic: Vec<bool>,
}

impl PairGraph {
    pub fn build(rule: &Rule) -> Result<Self, DeBruijnError> {
        Self::build_with_cap(rule, DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(rule: &Rule, cap: usize) -> Result<Self, DeBruijnError> {
        let k = rule.alphabet().len();
        let overlap = (rule.span() - 1).max(1);
        let too_large = || DeBruijnError::GraphTooLarge {
            alphabet: k,
            overlap,
            cap,
        };
        let words = crate::ca::checked_pow(k, overlap).ok_or_else(too_large)?;
        let vertex_count = words
            .checked_mul(words)
            .filter(|&n| n <= cap && n <= u32::MAX as usize)
            .ok_or_else(too_large)?;

        let lo = rule.min_offset();
        let positions: Vec<usize> = rule.neighborhood().iter().map(|o| (o - lo) as usize).collect();
        // output of every (m+1)-cell window
        let window_out: Vec<Symbol> = (0..words * k)
            .map(|w| {
                let word = rule.alphabet().word_of_index(w, overlap + 1);
                let args: Vec<Symbol> = positions.iter().map(|&p| word[p]).collect();
                rule.local(&args)
            })
            .collect();

        let mut succ = vec![Vec::new(); vertex_count];
        for (id, out) in succ.iter_mut().enumerate() {
            let (u, v) = (id / words, id % words);
            for a in 0..k {
                let wu = u * k + a;
                for b in 0..k {
                    let wv = v * k + b;
                    if window_out[wu] == window_out[wv] {
                        let next = (wu % words) * words + (wv % words);
                        out.push(next as Vertex);
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
        }
        let mut pred = vec![Vec::new(); vertex_count];
        for (id, out) in succ.iter().enumerate() {
            for &t in out {
                pred[t as usize].push(id as Vertex);
            }
        }
        let (scc, scc_count) = tarjan(&succ);
        let mut scc_size = vec![0usize; scc_count];
        for &c in &scc {
            scc_size[c as usize] += 1;
        }
        let cyclic = (0..vertex_count)
            .map(|v| scc_size[scc[v] as usize] > 1 || succ[v].contains(&(v as Vertex)))
            .collect();

        Ok(Self {
            alphabet_size: k,
            overlap,
            window_start: lo,
            words,
            succ,
            pred,
            scc,
            scc_count,
            cyclic,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Length `m` of the overlap words.
    pub fn overlap(&self) -> usize {
        self.overlap
    }

    /// Cell offset of the first overlap symbol relative to the output cell.
    pub fn window_start(&self) -> i64 {
        self.window_start
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// The vertex `(q…q, q…q)`.
    pub fn all_quiescent(&self) -> Vertex {
        0
    }

    pub fn vertex(&self, u: &[Symbol], v: &[Symbol]) -> Vertex {
        let k = self.alphabet_size;
        let iu = crate::ca::word_index(u, k);
        let iv = crate::ca::word_index(v, k);
        (iu * self.words + iv) as Vertex
    }

    pub fn words(&self, id: Vertex) -> (Vec<Symbol>, Vec<Symbol>) {
        let id = id as usize;
        let decode = |w: usize| {
            let mut word = vec![0; self.overlap];
            let mut w = w;
            for slot in word.iter_mut().rev() {
                *slot = (w % self.alphabet_size) as Symbol;
                w /= self.alphabet_size;
            }
            word
        };
        (decode(id / self.words), decode(id % self.words))
    }

    pub fn is_diagonal(&self, id: Vertex) -> bool {
        let id = id as usize;
        id / self.words == id % self.words
    }

    pub fn successors(&self, id: Vertex) -> &[Vertex] {
        &self.succ[id as usize]
    }

    pub fn predecessors(&self, id: Vertex) -> &[Vertex] {
        &self.pred[id as usize]
    }

    pub fn has_edge(&self, from: Vertex, to: Vertex) -> bool {
        self.succ[from as usize].binary_search(&to).is_ok()
    }

    pub fn scc(&self, id: Vertex) -> u32 {
        self.scc[id as usize]
    }

    pub fn scc_count(&self) -> usize {
        self.scc_count
    }

    /// Whether the vertex lies on a directed cycle (self-loops included).
    pub fn on_cycle(&self, id: Vertex) -> bool {
        self.cyclic[id as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.succ.len() as Vertex
    }

    pub fn diagonal(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.words).map(move |w| (w * self.words + w) as Vertex)
    }

    /// Vertices reachable from `seeds` (seeds included).
    pub fn reachable_from(&self, seeds: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
        bfs(&self.succ, seeds)
    }

    /// Vertices from which some seed is reachable (seeds included).
    pub fn reaching(&self, seeds: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
        bfs(&self.pred, seeds)
    }

    /// Shortest path (by edges) from `from` to the first vertex satisfying
    /// `target`, both ends included. With `nonempty`, `from` itself only
    /// counts once at least one edge has been taken.
    pub fn shortest_path(&self, from: Vertex, target: impl Fn(Vertex) -> bool, nonempty: bool) -> Option<Vec<Vertex>> {
        if !nonempty && target(from) {
            return Some(vec![from]);
        }
        let n = self.vertex_count();
        let mut parent: Vec<Option<Vertex>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from as usize] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &s in self.successors(v) {
                if target(s) {
                    let mut path = vec![s, v];
                    let mut cur = v;
                    while let Some(p) = parent[cur as usize] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    parent[s as usize] = Some(v);
                    queue.push_back(s);
                }
            }
        }
        None
    }

    /// The pair of configuration words spelled by a vertex path.
    pub fn spell(&self, path: &[Vertex]) -> (Vec<Symbol>, Vec<Symbol>) {
        let (mut x, mut y) = self.words(path[0]);
        for w in path.windows(2) {
            debug_assert!(self.has_edge(w[0], w[1]), "not a path");
            let (u, v) = self.words(w[1]);
            x.push(*u.last().unwrap());
            y.push(*v.last().unwrap());
        }
        (x, y)
    }
}

fn bfs(adj: &[Vec<Vertex>], seeds: impl IntoIterator<Item = Vertex>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for s in seeds {
        if !seen[s as usize] {
            seen[s as usize] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &t in &adj[v as usize] {
            if !seen[t as usize] {
                seen[t as usize] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Iterative Tarjan. Components are numbered in completion order.
fn tarjan(succ: &[Vec<Vertex>]) -> (Vec<u32>, usize) {
    const UNSEEN: u32 = u32::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut count = 0u32;
    // (vertex, next successor position)
    let mut call: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let vs = v as usize;
            if *pos < succ[vs].len() {
                let w = succ[vs][*pos];
                *pos += 1;
                let ws = w as usize;
                if index[ws] == UNSEEN {
                    index[ws] = next_index;
                    low[ws] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[ws] = true;
                    call.push((w, 0));
                } else if on_stack[ws] {
                    low[vs] = low[vs].min(index[ws]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    let ps = parent as usize;
                    low[ps] = low[ps].min(low[vs]);
                }
                if low[vs] == index[vs] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::catalog;

    #[test]
    fn tarjan_small() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3
        let succ = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let (comp, count) = tarjan(&succ);
        assert_eq!(count, 3);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[2], comp[3]);
        assert_ne!(comp[4], comp[3]);
    }

    #[test]
    fn all_quiescent_has_self_loop() {
        for rule in [
            catalog::xor(),
            catalog::identity(),
            catalog::elementary(30),
            catalog::and(),
        ] {
            let g = PairGraph::build(&rule).unwrap();
            let q = g.all_quiescent();
            assert!(g.has_edge(q, q), "{}", rule.name());
            assert!(g.is_diagonal(q));
        }
    }

    #[test]
    fn diagonal_is_one_component_containing_all_quiescent() {
        for rule in [catalog::xor(), catalog::elementary(30), catalog::negated_shift()] {
            let g = PairGraph::build(&rule).unwrap();
            let c = g.scc(g.all_quiescent());
            assert!(g.diagonal().all(|d| g.scc(d) == c));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = catalog::elementary(30);
        assert!(matches!(
            PairGraph::build_with_cap(&r, 15),
            Err(DeBruijnError::GraphTooLarge { .. })
        ));
        assert_eq!(PairGraph::build_with_cap(&r, 16).unwrap().vertex_count(), 16);
    }

    #[test]
    fn spell_reads_last_symbols() {
        let g = PairGraph::build(&catalog::xor()).unwrap();
        let p = g.vertex(&[0], &[1]);
        let (x, y) = g.spell(&[p, p, p]);
        assert_eq!((x, y), (vec![0, 0, 0], vec![1, 1, 1]));
    }
}
