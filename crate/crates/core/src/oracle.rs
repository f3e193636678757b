//! Exhaustive spanning-tree enumeration for small graphs.
//!
//! Edges are decided in id order; an edge is taken only if it joins two
//! different trees of the partial forest and skipped only if the remaining
//! edges still connect the graph. Every leaf of that recursion is a distinct
//! spanning tree and no branch is a dead end.

use crate::error::{MbvError, Result};
use crate::graph::{branch_count, Edge, EdgeId, Graph, SpanningTree};

/// Largest cycle rank the oracle accepts.
pub const MAX_CYCLE_RANK: usize = 20;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: SpanningTree,
    pub trees_enumerated: u64,
}

fn check_size(g: &Graph) -> Result<()> {
    g.require_connected()?;
    let rank = g.cycle_rank();
    if rank > MAX_CYCLE_RANK {
        return Err(MbvError::TooLarge {
            cycle_rank: rank,
            limit: MAX_CYCLE_RANK,
        });
    }
    Ok(())
}

struct Enumerator<'a, F> {
    g: &'a Graph,
    removed: Vec<bool>,
    chosen: Vec<EdgeId>,
    visit: F,
    count: u64,
}

impl<F: FnMut(&[Edge])> Enumerator<'_, F> {
    fn connected_without(&self, skip: EdgeId) -> bool {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(u, id) in self.g.incident(v) {
                if id != skip && !self.removed[id] && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == n
    }

    fn joins_new(&self, id: EdgeId) -> bool {
        // walk the chosen forest from one endpoint
        let e = self.g.edge(id);
        let n = self.g.n();
        let mut adj = vec![Vec::new(); n];
        for &c in &self.chosen {
            let f = self.g.edge(c);
            adj[f.u].push(f.v);
            adj[f.v].push(f.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![e.u];
        seen[e.u] = true;
        while let Some(v) = stack.pop() {
            if v == e.v {
                return false;
            }
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        true
    }

    fn recurse(&mut self, id: EdgeId) {
        if self.chosen.len() + 1 == self.g.n() {
            let edges: Vec<Edge> = self.chosen.iter().map(|&c| self.g.edge(c)).collect();
            (self.visit)(&edges);
            self.count += 1;
            return;
        }
        if id == self.g.m() {
            return;
        }
        if self.joins_new(id) {
            self.chosen.push(id);
            self.recurse(id + 1);
            self.chosen.pop();
        }
        if self.connected_without(id) {
            self.removed[id] = true;
            self.recurse(id + 1);
            self.removed[id] = false;
        }
    }
}

/// Calls `visit` once per spanning tree (edges ascending) and returns the count.
pub fn enumerate_spanning_trees(g: &Graph, visit: impl FnMut(&[Edge])) -> Result<u64> {
    check_size(g)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let mut en = Enumerator {
        g,
        removed: vec![false; g.m()],
        chosen: Vec::new(),
        visit,
        count: 0,
    };
    en.recurse(0);
    Ok(en.count)
}

/// Minimum branch count over all spanning trees. The witness is the
/// lexicographically smallest optimal edge set.
pub fn brute_force_optimum(g: &Graph) -> Result<OracleResult> {
    let mut best: Option<(usize, Vec<Edge>)> = None;
    let n = g.n();
    let count = enumerate_spanning_trees(g, |edges| {
        let b = branch_count(n, edges);
        let better = match &best {
            None => true,
            Some((bb, be)) => b < *bb || (b == *bb && edges < &be[..]),
        };
        if better {
            best = Some((b, edges.to_vec()));
        }
    })?;
    let (optimum, edges) = best.unwrap_or((0, Vec::new()));
    Ok(OracleResult {
        optimum,
        witness: SpanningTree::new_unchecked(edges, optimum),
        trees_enumerated: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_spanning_tree;

    fn count(g: &Graph) -> u64 {
        enumerate_spanning_trees(g, |_| {}).unwrap()
    }

    #[test]
    fn known_counts() {
        assert_eq!(count(&cycle(5)), 5);
        // Cayley: 4^2
        assert_eq!(count(&complete(4)), 16);
        // K_{2,4}: 2^3 * 4^1
        assert_eq!(count(&k24()), 32);
        assert_eq!(count(&path(6)), 1);
        assert_eq!(count(&petersen()), 2000);
    }

    #[test]
    fn trees_are_distinct_and_valid() {
        let g = complete(5);
        let mut seen = std::collections::BTreeSet::new();
        enumerate_spanning_trees(&g, |t| {
            assert!(is_spanning_tree(&g, t));
            assert!(seen.insert(t.to_vec()));
        })
        .unwrap();
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn optima() {
        assert_eq!(brute_force_optimum(&path(4)).unwrap().optimum, 0);
        assert_eq!(brute_force_optimum(&star(3)).unwrap().optimum, 1);
        let r = brute_force_optimum(&k24()).unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(r.trees_enumerated, 32);
        assert!(is_spanning_tree(&k24(), r.witness.edges()));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let g = cycle(4);
        let r = brute_force_optimum(&g).unwrap();
        assert_eq!(r.witness.edges(), &g.edges()[..3]);
    }

    #[test]
    fn guard() {
        let g = complete(8);
        assert_eq!(
            brute_force_optimum(&g).unwrap_err(),
            MbvError::TooLarge { cycle_rank: 21, limit: 20 }
        );
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(count_err(&g), MbvError::DisconnectedInput);
    }

    fn count_err(g: &Graph) -> MbvError {
        enumerate_spanning_trees(g, |_| {}).unwrap_err()
    }
}
