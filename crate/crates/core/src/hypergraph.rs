//! Vertex-ordered hypergraphs, colorings, exact chromatic search and
//! hypergraph girth.
//!
//! Vertices are `0..n` and the index order is meaningful: for the staged
//! constructions it is the left-to-right order of the geometric realization.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on backtracking nodes for [`is_c_colorable`].
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct OrderedHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for OrderedHypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        OrderedHypergraph::new(raw.n, raw.edges)
    }
}

impl OrderedHypergraph {
    /// Validates that every edge is strictly increasing and inside `0..n`.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        for (e, edge) in edges.iter().enumerate() {
            for (i, &v) in edge.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { edge: e, vertex: v, n });
                }
                if i > 0 && edge[i - 1] >= v {
                    return Err(Error::UnsortedEdge(e));
                }
            }
        }
        Ok(Self { n, edges })
    }

    /// Sorts and deduplicates each edge before validating.
    pub fn from_unsorted(n: usize, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        for edge in &mut edges {
            edge.sort_unstable();
            edge.dedup();
        }
        Self::new(n, edges)
    }

    pub fn edgeless(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    /// The cycle `C_len` as a 2-uniform hypergraph.
    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::InvalidParameter(format!("cycle length {len} < 3")));
        }
        let edges = (0..len)
            .map(|i| {
                let j = (i + 1) % len;
                vec![i.min(j), i.max(j)]
            })
            .collect();
        Self::new(len, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Common edge size, if every edge has the same size.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges
            .iter()
            .all(|e| e.len() == first)
            .then_some(first)
    }

    pub fn into_edges(self) -> Vec<Vec<usize>> {
        self.edges
    }

    /// Edges lying entirely inside `vertices`, renumbered by position in
    /// `vertices` (which must be strictly increasing).
    pub fn induced(&self, vertices: &[usize]) -> OrderedHypergraph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| position[v] != usize::MAX))
            .map(|e| {
                let mut mapped: Vec<usize> = e.iter().map(|&v| position[v]).collect();
                mapped.sort_unstable();
                mapped
            })
            .collect();
        OrderedHypergraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Returns a copy with an extra edge (used by monotonicity checks).
    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::from_unsorted(self.n, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring")]
pub struct Coloring {
    c: usize,
    colors: Vec<usize>,
}

#[derive(Deserialize)]
struct RawColoring {
    c: usize,
    colors: Vec<usize>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        Coloring::new(raw.c, raw.colors)
    }
}

impl Coloring {
    pub fn new(c: usize, colors: Vec<usize>) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &col)| col >= c) {
            return Err(Error::ColorOutOfRange {
                vertex,
                color,
                palette: c,
            });
        }
        Ok(Self { c, colors })
    }

    pub fn palette(&self) -> usize {
        self.c
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.c];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Decodes `index` in base `c` (vertex 0 is the least significant digit).
    pub fn from_index(n: usize, c: usize, mut index: u64) -> Self {
        let colors = (0..n)
            .map(|_| {
                let digit = (index % c as u64) as usize;
                index /= c as u64;
                digit
            })
            .collect();
        Self { c, colors }
    }
}

fn check_lengths(h: &OrderedHypergraph, col: &Coloring) -> Result<()> {
    if col.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: col.len(),
        });
    }
    Ok(())
}

/// Edges of size at most one count as monochromatic.
pub fn edge_is_monochromatic(edge: &[usize], col: &Coloring) -> bool {
    match edge.split_first() {
        None => true,
        Some((&first, rest)) => {
            let c = col.color(first);
            rest.iter().all(|&v| col.color(v) == c)
        }
    }
}

pub fn is_proper_coloring(h: &OrderedHypergraph, col: &Coloring) -> Result<bool> {
    check_lengths(h, col)?;
    Ok(!h.edges().iter().any(|e| edge_is_monochromatic(e, col)))
}

/// Smallest index of a monochromatic edge, by plain scan.
pub fn naive_monochromatic_edge(h: &OrderedHypergraph, col: &Coloring) -> Result<Option<usize>> {
    check_lengths(h, col)?;
    Ok(h.edges().iter().position(|e| edge_is_monochromatic(e, col)))
}

/// Searches for a proper `c`-coloring using the default node budget.
pub fn is_c_colorable(h: &OrderedHypergraph, c: usize) -> Result<Option<Coloring>> {
    is_c_colorable_with_budget(h, c, DEFAULT_NODE_BUDGET)
}

/// Backtracking over vertices in index order. Vertex `v` may only take a
/// color at most one above the largest color used on `0..v`, which pins
/// vertex 0 to color 0 and removes palette permutations. An edge is checked
/// when its last vertex is colored.
pub fn is_c_colorable_with_budget(
    h: &OrderedHypergraph,
    c: usize,
    node_budget: u64,
) -> Result<Option<Coloring>> {
    if c == 0 {
        return Err(Error::InvalidParameter("palette size must be positive".into()));
    }
    let n = h.n();
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, edge) in h.edges().iter().enumerate() {
        match edge.last() {
            None => return Ok(None),
            Some(&last) => closing[last].push(e),
        }
    }
    if n == 0 {
        return Ok(Some(Coloring { c, colors: Vec::new() }));
    }

    const UNSET: usize = usize::MAX;
    let mut colors = vec![UNSET; n];
    // used[v] = number of distinct colors on vertices 0..v
    let mut used = vec![0usize; n + 1];
    let mut nodes: u64 = 0;
    let mut v = 0usize;
    loop {
        let limit = c.min(used[v] + 1);
        let start = if colors[v] == UNSET { 0 } else { colors[v] + 1 };
        let mut chosen = None;
        for col in start..limit {
            nodes += 1;
            if nodes > node_budget {
                return Err(Error::NodeBudgetExceeded(node_budget));
            }
            let clash = closing[v].iter().any(|&e| {
                h.edge(e)
                    .iter()
                    .all(|&u| if u == v { true } else { colors[u] == col })
            });
            if !clash {
                chosen = Some(col);
                break;
            }
        }
        match chosen {
            Some(col) => {
                colors[v] = col;
                used[v + 1] = used[v].max(col + 1);
                v += 1;
                if v == n {
                    return Ok(Some(Coloring { c, colors }));
                }
                colors[v] = UNSET;
            }
            None => {
                colors[v] = UNSET;
                if v == 0 {
                    return Ok(None);
                }
                v -= 1;
            }
        }
    }
}

pub fn chromatic_number(h: &OrderedHypergraph) -> Result<usize> {
    chromatic_number_with_budget(h, DEFAULT_NODE_BUDGET)
}

pub fn chromatic_number_with_budget(h: &OrderedHypergraph, node_budget: u64) -> Result<usize> {
    if let Some(e) = h.edges().iter().position(|e| e.is_empty()) {
        return Err(Error::EmptyEdge(e));
    }
    if let Some(e) = h.edges().iter().position(|e| e.len() == 1) {
        // a singleton edge is monochromatic under every coloring
        return Err(Error::InvalidParameter(format!(
            "edge {e} is a singleton, so the chromatic number is unbounded"
        )));
    }
    let mut c = 1;
    loop {
        if is_c_colorable_with_budget(h, c, node_budget)?.is_some() {
            return Ok(c);
        }
        c += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    /// `true` when the girth is at least `g` (acyclic counts).
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => x >= g,
            Girth::Infinite => true,
        }
    }
}

/// A cycle `(v_1, E_1, ..., v_g, E_g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CycleWitness {
    /// Checks distinctness and consecutive membership, wrapping around.
    pub fn is_valid_in(&self, h: &OrderedHypergraph) -> bool {
        let g = self.vertices.len();
        if g < 2 || self.edges.len() != g {
            return false;
        }
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&self.vertices) || !distinct(&self.edges) {
            return false;
        }
        (0..g).all(|i| {
            let Some(edge) = h.edges().get(self.edges[i]) else {
                return false;
            };
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % g];
            edge.binary_search(&a).is_ok() && edge.binary_search(&b).is_ok()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesReport {
    pub girth: Girth,
    pub witness: Option<CycleWitness>,
}

/// Incidence graph: nodes `0..n` are vertices, `n..n+m` are edges.
struct Incidence {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(h: &OrderedHypergraph) -> Self {
        let n = h.n();
        let mut adj = vec![Vec::new(); n + h.num_edges()];
        for (e, edge) in h.edges().iter().enumerate() {
            for &v in edge {
                adj[v].push(n + e);
                adj[n + e].push(v);
            }
        }
        Self { n, adj }
    }

    /// Length of the shortest cycle, by breadth-first search from every node.
    fn shortest_cycle(&self) -> Option<usize> {
        let total = self.adj.len();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = VecDeque::new();
        for s in 0..total {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Lexicographically smallest cycle of incidence length `len`, with the
    /// smallest vertex first. Assumes `len` is the girth of the incidence graph.
    fn smallest_witness(&self, len: usize) -> Option<CycleWitness> {
        let total = self.adj.len();
        let mut sorted_adj = self.adj.clone();
        sorted_adj.iter_mut().for_each(|a| a.sort_unstable());
        for start in 0..self.n {
            // distance back to `start` avoiding vertices below it
            let allowed = |x: usize| x >= self.n || x >= start;
            let mut back = vec![usize::MAX; total];
            back[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &sorted_adj[u] {
                    if allowed(w) && back[w] == usize::MAX {
                        back[w] = back[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            let mut path = vec![start];
            let mut on_path = vec![false; total];
            on_path[start] = true;
            if self.extend(&sorted_adj, &back, &allowed, len, &mut path, &mut on_path) {
                let vertices = path.iter().step_by(2).copied().collect();
                let edges = path.iter().skip(1).step_by(2).map(|&e| e - self.n).collect();
                return Some(CycleWitness { vertices, edges });
            }
        }
        None
    }

    fn extend(
        &self,
        adj: &[Vec<usize>],
        back: &[usize],
        allowed: &dyn Fn(usize) -> bool,
        len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
    ) -> bool {
        let u = *path.last().unwrap();
        let steps_left = len - (path.len() - 1);
        if steps_left == 1 {
            return adj[u].binary_search(&path[0]).is_ok() && path.len() > 2;
        }
        for &w in &adj[u] {
            if !allowed(w) || on_path[w] || back[w] > steps_left - 1 {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            if self.extend(adj, back, allowed, len, path, on_path) {
                return true;
            }
            on_path[w] = false;
            path.pop();
        }
        false
    }
}

/// Girth per the alternating vertex/edge cycle definition, computed as half
/// the girth of the vertex-edge incidence graph.
pub fn hypergraph_girth(h: &OrderedHypergraph) -> CyclesReport {
    let inc = Incidence::new(h);
    match inc.shortest_cycle() {
        None => CyclesReport {
            girth: Girth::Infinite,
            witness: None,
        },
        Some(len) => CyclesReport {
            girth: Girth::Finite(len / 2),
            witness: inc.smallest_witness(len),
        },
    }
}

/// Multiset equality of edge lists under the identity vertex map.
pub fn edge_multiset_equal(a: &OrderedHypergraph, b: &OrderedHypergraph) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::VertexCountMismatch(a.n(), b.n()));
    }
    if a.num_edges() != b.num_edges() {
        return Ok(false);
    }
    let mut x: Vec<&Vec<usize>> = a.edges().iter().collect();
    let mut y: Vec<&Vec<usize>> = b.edges().iter().collect();
    x.sort_unstable();
    y.sort_unstable();
    Ok(x == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(n: usize, edges: &[&[usize]]) -> OrderedHypergraph {
        OrderedHypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn proper_coloring_examples() {
        let tri = h(3, &[&[0, 1, 2]]);
        let all0 = Coloring::new(1, vec![0, 0, 0]).unwrap();
        assert!(!is_proper_coloring(&tri, &all0).unwrap());
        let mixed = Coloring::new(2, vec![0, 0, 1]).unwrap();
        assert!(is_proper_coloring(&tri, &mixed).unwrap());
        let empty = OrderedHypergraph::edgeless(3);
        assert!(is_proper_coloring(&empty, &all0).unwrap());
    }

    #[test]
    fn singleton_edge_forbids_everything() {
        let one = h(2, &[&[1]]);
        let col = Coloring::new(2, vec![0, 1]).unwrap();
        assert!(!is_proper_coloring(&one, &col).unwrap());
        assert!(is_c_colorable(&one, 5).unwrap().is_none());
    }

    #[test]
    fn coloring_errors() {
        let tri = h(3, &[&[0, 1, 2]]);
        let short = Coloring::new(2, vec![0, 1]).unwrap();
        assert!(matches!(
            is_proper_coloring(&tri, &short),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            Coloring::new(2, vec![0, 2, 1]),
            Err(Error::ColorOutOfRange { vertex: 1, color: 2, .. })
        ));
    }

    #[test]
    fn hypergraph_validation() {
        assert!(matches!(
            OrderedHypergraph::new(3, vec![vec![0, 3]]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            OrderedHypergraph::new(3, vec![vec![1, 1]]),
            Err(Error::UnsortedEdge(0))
        ));
    }

    #[test]
    fn naive_scanner_examples() {
        let g = h(3, &[&[0, 1], &[1, 2]]);
        let col = Coloring::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(naive_monochromatic_edge(&g, &col).unwrap(), Some(1));
        let g = h(2, &[&[0, 1]]);
        let col = Coloring::new(2, vec![0, 1]).unwrap();
        assert_eq!(naive_monochromatic_edge(&g, &col).unwrap(), None);
    }

    #[test]
    fn colorability_examples() {
        let tri = h(3, &[&[0, 1, 2]]);
        let col = is_c_colorable(&tri, 2).unwrap().unwrap();
        assert!(is_proper_coloring(&tri, &col).unwrap());
        let c5 = OrderedHypergraph::cycle(5).unwrap();
        assert!(is_c_colorable(&c5, 2).unwrap().is_none());
        assert_eq!(chromatic_number(&c5).unwrap(), 3);
        assert_eq!(chromatic_number(&OrderedHypergraph::edgeless(4)).unwrap(), 1);
    }

    #[test]
    fn chromatic_number_rejects_empty_edge() {
        let g = OrderedHypergraph::new(2, vec![vec![0, 1], vec![]]).unwrap();
        assert_eq!(chromatic_number(&g), Err(Error::EmptyEdge(1)));
    }

    #[test]
    fn node_budget_is_enforced() {
        let c7 = OrderedHypergraph::cycle(7).unwrap();
        assert_eq!(
            is_c_colorable_with_budget(&c7, 2, 3),
            Err(Error::NodeBudgetExceeded(3))
        );
    }

    #[test]
    fn girth_examples() {
        let two = h(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let rep = hypergraph_girth(&two);
        assert_eq!(rep.girth, Girth::Finite(2));
        let w = rep.witness.unwrap();
        assert!(w.is_valid_in(&two));
        assert_eq!(w.vertices, vec![1, 2]);

        let c5 = OrderedHypergraph::cycle(5).unwrap();
        let rep = hypergraph_girth(&c5);
        assert_eq!(rep.girth, Girth::Finite(5));
        let w = rep.witness.unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert!(w.is_valid_in(&c5));

        let path = h(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(hypergraph_girth(&path).girth, Girth::Infinite);
    }

    #[test]
    fn duplicate_edges_form_a_two_cycle() {
        let g = h(2, &[&[0, 1], &[0, 1]]);
        assert_eq!(hypergraph_girth(&g).girth, Girth::Finite(2));
    }

    #[test]
    fn multiset_equality() {
        let a = h(3, &[&[0, 1], &[1, 2]]);
        let b = h(3, &[&[1, 2], &[0, 1]]);
        assert!(edge_multiset_equal(&a, &a).unwrap());
        assert!(edge_multiset_equal(&a, &b).unwrap());
        let c = h(3, &[&[1, 2], &[1, 2]]);
        assert!(!edge_multiset_equal(&a, &c).unwrap());
        assert!(edge_multiset_equal(&a, &OrderedHypergraph::edgeless(4)).is_err());
    }

    /// Graph girth by removing each edge and measuring the remaining
    /// distance between its endpoints.
    fn graph_girth_oracle(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
        let mut best = None;
        for (skip, &(a, b)) in edges.iter().enumerate() {
            let mut adj = vec![Vec::new(); n];
            for (i, &(x, y)) in edges.iter().enumerate() {
                if i != skip {
                    adj[x].push(y);
                    adj[y].push(x);
                }
            }
            let mut dist = vec![usize::MAX; n];
            dist[a] = 0;
            let mut q = VecDeque::from([a]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            if dist[b] != usize::MAX {
                let len = dist[b] + 1;
                best = Some(best.map_or(len, |x: usize| x.min(len)));
            }
        }
        best
    }

    fn arb_hypergraph() -> impl Strategy<Value = OrderedHypergraph> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=3.min(n)), 0..7)
                .prop_map(move |edges| {
                    OrderedHypergraph::new(n, edges.into_iter().map(|e| e.into_iter().collect()).collect())
                        .unwrap()
                })
        })
    }

    /// At least two vertices and no edge of size below two.
    fn arb_loopless_hypergraph() -> impl Strategy<Value = OrderedHypergraph> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 2..=3.min(n)), 0..7)
                .prop_map(move |edges| {
                    OrderedHypergraph::new(n, edges.into_iter().map(|e| e.into_iter().collect()).collect())
                        .unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn proper_iff_no_monochromatic_edge(g in arb_hypergraph(), seed in any::<u64>()) {
            let c = 3;
            let col = Coloring::from_index(g.n(), c, seed % 3u64.pow(g.n() as u32));
            prop_assert_eq!(
                is_proper_coloring(&g, &col).unwrap(),
                naive_monochromatic_edge(&g, &col).unwrap().is_none()
            );
        }

        #[test]
        fn chromatic_number_monotone(g in arb_loopless_hypergraph(), a in 0usize..8, step in 1usize..8) {
            let a = a % g.n();
            let b = (a + 1 + step % (g.n() - 1)) % g.n();
            let bigger = g.with_edge(vec![a, b]).unwrap();
            prop_assert!(chromatic_number(&bigger).unwrap() >= chromatic_number(&g).unwrap());
        }

        #[test]
        fn exhaustive_agrees_with_search(g in arb_hypergraph(), c in 1usize..4) {
            let total = (c as u64).pow(g.n() as u32);
            let exists = (0..total)
                .any(|i| is_proper_coloring(&g, &Coloring::from_index(g.n(), c, i)).unwrap());
            let found = is_c_colorable(&g, c).unwrap();
            prop_assert_eq!(exists, found.is_some());
            if let Some(col) = found {
                prop_assert!(is_proper_coloring(&g, &col).unwrap());
            }
        }

        #[test]
        fn girth_matches_graph_bfs(
            n in 2usize..=12,
            raw in proptest::collection::btree_set((0usize..12, 0usize..12), 0..24)
        ) {
            let pairs: std::collections::BTreeSet<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            let pairs: Vec<_> = pairs.into_iter().collect();
            let g = OrderedHypergraph::new(n, pairs.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap();
            let rep = hypergraph_girth(&g);
            match graph_girth_oracle(n, &pairs) {
                None => prop_assert_eq!(rep.girth, Girth::Infinite),
                Some(len) => {
                    prop_assert_eq!(rep.girth, Girth::Finite(len));
                    prop_assert!(rep.witness.unwrap().is_valid_in(&g));
                }
            }
        }

        #[test]
        fn girth_witness_is_a_cycle(g in arb_hypergraph()) {
            let rep = hypergraph_girth(&g);
            if let Girth::Finite(len) = rep.girth {
                let w = rep.witness.expect("finite girth has a witness");
                prop_assert_eq!(w.vertices.len(), len);
                prop_assert!(w.is_valid_in(&g));
            }
        }
    }
}
