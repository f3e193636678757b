//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the crate's structural code: components are found
//! by plain BFS over an edge list, articulation data by deleting each vertex or
//! edge in turn, and spanning trees are counted with the Matrix-Tree theorem.
#![allow(dead_code)]

use std::collections::VecDeque;

use mbv::{component_branch_count, enumerate_spanning_trees, Component, Edge, Graph};

/// Number of connected components of the graph on `alive` vertices using the
/// edges for which `keep` holds.
pub fn count_components(n: usize, edges: &[Edge], alive: impl Fn(usize) -> bool, keep: impl Fn(usize) -> bool) -> usize {
    let mut adj = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        if keep(i) && alive(e.u) && alive(e.v) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] || !alive(s) {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    count
}

/// Components of `G - v` for every vertex.
pub fn alpha_by_deletion(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|v| count_components(g.n(), g.edges(), |x| x != v, |_| true))
        .collect()
}

/// Edges whose deletion increases the component count.
pub fn bridges_by_deletion(g: &Graph) -> Vec<Edge> {
    let base = count_components(g.n(), g.edges(), |_| true, |_| true);
    (0..g.m())
        .filter(|&i| count_components(g.n(), g.edges(), |_| true, |j| j != i) > base)
        .map(|i| g.edge(i))
        .collect()
}

/// `s(G)` lower bound from vertex deletion alone, for a connected graph.
pub fn obligatory_by_deletion(g: &Graph) -> Vec<usize> {
    alpha_by_deletion(g)
        .into_iter()
        .enumerate()
        .filter(|&(_, a)| a >= 3)
        .map(|(v, _)| v)
        .collect()
}

/// Spanning-tree count by the Matrix-Tree theorem, with fraction-free
/// (Bareiss) elimination of a reduced Laplacian.
pub fn matrix_tree_count(g: &Graph) -> i128 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let k = n - 1;
    let mut a = vec![vec![0i128; k]; k];
    for e in g.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x < k {
                a[x][x] += 1;
                if y < k {
                    a[x][y] -= 1;
                }
            }
        }
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            match (p + 1..k).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
        }
        prev = a[p][p];
    }
    sign * a[k - 1][k - 1]
}

/// Optimal component objective by enumerating the component's spanning trees.
pub fn component_optimum(c: &Component) -> usize {
    let mut best = usize::MAX;
    enumerate_spanning_trees(&c.graph, |t| {
        best = best.min(component_branch_count(c, t).expect("enumerated tree is valid"));
    })
    .expect("component is enumerable");
    best
}

/// The graph with vertex `v` renamed to `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (perm[e.u], perm[e.v])).collect();
    Graph::new(g.n(), &pairs).expect("relabeling keeps the graph simple")
}
