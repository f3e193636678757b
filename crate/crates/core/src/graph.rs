//! Simple undirected graphs and spanning-tree bookkeeping.
//!
//! Vertices are dense indices `0..n`. Edges are stored normalized (`u < v`) and
//! sorted, and an edge's id is its position in that sorted list. Every
//! iteration order exposed here is deterministic.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{MbvError, Result};
use crate::union_find::UnionFind;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Builds the normalized edge between `a` and `b`.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// Per-vertex `(neighbor, edge id)` pairs, sorted by neighbor.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Loops, repeated pairs (in either
    /// orientation) and out-of-range indices are rejected.
    pub fn new(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(MbvError::IndexOutOfRange { index: x, n });
                }
            }
            if a == b {
                return Err(MbvError::LoopEdge { vertex: a });
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(MbvError::DuplicateEdge { u: w[0].u, v: w[0].v });
        }
        Ok(Self::from_sorted_edges(n, edges))
    }

    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    /// `(neighbor, edge id)` pairs of `v`, sorted by neighbor.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let e = Edge::new(a, b);
        if e.v >= self.n {
            return None;
        }
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// Number of independent cycles, `m - n + c`.
    pub fn cycle_rank(&self) -> usize {
        let (c, _) = connected_components(self);
        self.m() + c - self.n
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).0 <= 1
    }

    /// Hash of the vertex count and edge list, used to detect results computed
    /// on a different graph.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        self.edges.hash(&mut h);
        h.finish()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(MbvError::DisconnectedInput)
        }
    }
}

/// Labels connected components `0..count` in order of their smallest vertex.
pub fn connected_components(g: &Graph) -> (usize, Vec<usize>) {
    let mut label = vec![usize::MAX; g.n()];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if label[u] == usize::MAX {
                    label[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    (count, label)
}

/// True iff `tree` is a subset of `g`'s edges with `n - 1` members connecting
/// all vertices.
pub fn is_spanning_tree(g: &Graph, tree: &[Edge]) -> bool {
    tree.iter().all(|e| g.has_edge(e.u, e.v)) && forms_spanning_tree(g.n(), tree)
}

/// Same check without a host graph: `n - 1` distinct edges over `0..n` that
/// connect everything.
pub fn forms_spanning_tree(n: usize, tree: &[Edge]) -> bool {
    if n == 0 {
        return tree.is_empty();
    }
    if tree.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    tree.iter().all(|e| e.u < n && e.v < n && uf.union(e.u, e.v))
}

pub fn tree_degrees(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for e in edges {
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg
}

/// Number of vertices with degree greater than two in the subgraph formed by `edges`.
pub fn branch_count(n: usize, edges: &[Edge]) -> usize {
    tree_degrees(n, edges).into_iter().filter(|&d| d > 2).count()
}

/// A validated spanning tree together with its objective value.
///
/// For whole graphs `branches` is the plain branch count; for decomposition
/// components it is the component objective (extra degrees credited, split
/// copies exempt).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    edges: Vec<Edge>,
    branches: usize,
}

impl SpanningTree {
    pub(crate) fn new_unchecked(mut edges: Vec<Edge>, branches: usize) -> Self {
        edges.sort_unstable();
        SpanningTree { edges, branches }
    }

    /// Validates `edges` against `g` and counts branch vertices.
    pub fn from_edges(g: &Graph, edges: Vec<Edge>) -> Result<Self> {
        if !is_spanning_tree(g, &edges) {
            return Err(MbvError::NotASpanningTree { component: None });
        }
        let branches = branch_count(g.n(), &edges);
        Ok(Self::new_unchecked(edges, branches))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn build_normalizes_and_sorts() {
        let g = Graph::new(4, &[(2, 1), (0, 1), (3, 2)]).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)]);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(g, path(4));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(MbvError::LoopEdge { vertex: 0 }));
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(MbvError::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(MbvError::IndexOutOfRange { index: 2, n: 2 })
        );
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&path(4)).0, 1);
        let g = Graph::new(5, &[(0, 1), (2, 3)]).unwrap();
        let (count, label) = connected_components(&g);
        assert_eq!(count, 3);
        assert_eq!(label, vec![0, 0, 1, 1, 2]);
        assert_eq!(connected_components(&cycle(5)).0, 1);
    }

    #[test]
    fn spanning_tree_checks() {
        let p = path(4);
        assert!(is_spanning_tree(&p, p.edges()));
        let c = cycle(5);
        assert!(!is_spanning_tree(&c, c.edges()));
        assert!(is_spanning_tree(&c, &c.edges()[1..]));
        assert!(!is_spanning_tree(&p, &[Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 3)]));
    }

    #[test]
    fn branch_counts() {
        assert_eq!(branch_count(4, path(4).edges()), 0);
        assert_eq!(branch_count(4, star(3).edges()), 1);
        assert_eq!(branch_count(7, spider().edges()), 1);
    }

    #[test]
    fn cycle_rank() {
        assert_eq!(k24().cycle_rank(), 3);
        assert_eq!(path(5).cycle_rank(), 0);
        assert_eq!(petersen().cycle_rank(), 6);
    }
}
