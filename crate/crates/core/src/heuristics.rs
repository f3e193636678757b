//! Constructive heuristics that grow a spanning tree out of long paths.
//!
//! Both heuristics share the start-restart rule: prefer an obligatory branch,
//! then a vertex that is already a branch in the tree, then the vertex with the
//! most neighbors outside the tree. Path expanding extends one path at a time
//! from its newest vertex; multi-path expanding may extend any candidate path
//! end. In both, the next vertex is the one with the fewest neighbors still
//! outside the tree. Remaining ties go to the smallest vertex id.
//!
//! An [`Overlay`] lets the same code run on a decomposition component: tree
//! degrees start at the extra degree of each vertex, and split copies are
//! treated like obligatory branches and never counted.

use std::collections::BTreeSet;

use crate::bound::LowerBoundResult;
use crate::decompose::{weighted_branch_count, Component, Provenance};
use crate::error::{MbvError, Result};
use crate::graph::{Edge, Graph, SpanningTree, VertexId};
use crate::structure::structural_report;

#[derive(Debug, Clone)]
pub struct Overlay {
    /// Vertices favoured by start-restart and never retired as candidates.
    pub preferred: Vec<bool>,
    /// Degree already owed to each vertex (removed cut edges).
    pub extra: Vec<usize>,
    /// Vertices that count toward the objective.
    pub counted: Vec<bool>,
}

impl Overlay {
    pub fn plain(g: &Graph, lb: &LowerBoundResult) -> Self {
        Overlay {
            preferred: lb.obligatory_mask(g.n()),
            extra: vec![0; g.n()],
            counted: vec![true; g.n()],
        }
    }

    pub fn component(c: &Component) -> Self {
        let report = structural_report(&c.graph);
        let preferred = c
            .provenance
            .iter()
            .enumerate()
            .map(|(v, p)| match p {
                Provenance::SplitCopy { .. } => true,
                Provenance::Original(_) => report.split_count(v).is_some_and(|a| a >= 3),
            })
            .collect();
        Overlay {
            preferred,
            extra: c.gamma.clone(),
            counted: c.counted(),
        }
    }

    fn may_grow(&self, v: VertexId, tree_degree: usize) -> bool {
        tree_degree <= 1 || self.preferred[v] || !self.counted[v]
    }
}

/// Mutable bookkeeping of a partial tree.
#[derive(Debug, Clone)]
pub struct HeuristicState {
    pub in_tree: Vec<bool>,
    pub tree_degree: Vec<usize>,
    /// Neighbors of each vertex that are not yet in the tree.
    pub unvisited: Vec<usize>,
    pub tree_edges: Vec<Edge>,
    preferred: Vec<bool>,
}

impl HeuristicState {
    pub fn new(g: &Graph, lb: &LowerBoundResult) -> Self {
        Self::with_overlay(g, &Overlay::plain(g, lb))
    }

    pub fn with_overlay(g: &Graph, overlay: &Overlay) -> Self {
        HeuristicState {
            in_tree: vec![false; g.n()],
            tree_degree: overlay.extra.clone(),
            unvisited: (0..g.n()).map(|v| g.degree(v)).collect(),
            tree_edges: Vec::with_capacity(g.n().saturating_sub(1)),
            preferred: overlay.preferred.clone(),
        }
    }

    fn enter(&mut self, g: &Graph, v: VertexId) {
        self.in_tree[v] = true;
        for u in g.neighbors(v) {
            self.unvisited[u] -= 1;
        }
    }

    fn link(&mut self, u: VertexId, v: VertexId) {
        self.tree_degree[u] += 1;
        self.tree_degree[v] += 1;
        self.tree_edges.push(Edge::new(u, v));
    }

    fn is_spanning(&self, g: &Graph) -> bool {
        self.tree_edges.len() + 1 >= g.n()
    }
}

/// Start-restart rule. With `restrict_to_tree` only tree vertices are
/// eligible; in every case the vertex needs a neighbor outside the tree.
pub fn start_restart_select(g: &Graph, state: &HeuristicState, restrict_to_tree: bool) -> Result<VertexId> {
    (0..g.n())
        .filter(|&v| state.unvisited[v] > 0 && (!restrict_to_tree || state.in_tree[v]))
        .min_by_key(|&v| {
            let class = if state.preferred[v] {
                0
            } else if state.tree_degree[v] > 2 {
                1
            } else {
                2
            };
            (class, std::cmp::Reverse(state.unvisited[v]), v)
        })
        .ok_or(MbvError::NoEligibleVertex)
}

fn finish(g: &Graph, overlay: &Overlay, edges: Vec<Edge>) -> SpanningTree {
    let branches = weighted_branch_count(g, &edges, &overlay.extra, &overlay.counted);
    SpanningTree::new_unchecked(edges, branches)
}

pub fn path_expanding(g: &Graph, lb: &LowerBoundResult) -> Result<SpanningTree> {
    path_expanding_with(g, &Overlay::plain(g, lb))
}

pub fn path_expanding_with(g: &Graph, overlay: &Overlay) -> Result<SpanningTree> {
    g.require_connected()?;
    let mut st = HeuristicState::with_overlay(g, overlay);
    if g.n() <= 1 {
        return Ok(finish(g, overlay, Vec::new()));
    }
    let first = start_restart_select(g, &st, false)?;
    st.enter(g, first);

    while !st.is_spanning(g) {
        let open_end = (0..g.n())
            .filter(|&v| st.in_tree[v] && st.tree_degree[v] <= 1 && st.unvisited[v] > 0)
            .min_by_key(|&v| (st.unvisited[v], v));
        let mut u = match open_end {
            Some(v) => v,
            None => start_restart_select(g, &st, true)?,
        };
        while st.unvisited[u] > 0 {
            let v = g
                .neighbors(u)
                .filter(|&w| !st.in_tree[w])
                .min_by_key(|&w| (st.unvisited[w], w))
                .expect("unvisited count is positive");
            st.link(u, v);
            st.enter(g, v);
            if !overlay.may_grow(v, st.tree_degree[v]) {
                break;
            }
            u = v;
        }
    }
    Ok(finish(g, overlay, st.tree_edges))
}

pub fn multi_path_expanding(g: &Graph, lb: &LowerBoundResult) -> Result<SpanningTree> {
    multi_path_expanding_with(g, &Overlay::plain(g, lb))
}

/// Candidate set plus the frontier of outside vertices adjacent to a
/// candidate, keyed by `(unvisited, id)` so the best expansion is the minimum.
struct Frontier {
    in_cand: Vec<bool>,
    cand_neighbors: Vec<usize>,
    queue: BTreeSet<(usize, VertexId)>,
}

impl Frontier {
    fn add_candidate(&mut self, g: &Graph, st: &HeuristicState, x: VertexId) {
        if self.in_cand[x] {
            return;
        }
        self.in_cand[x] = true;
        for w in g.neighbors(x).filter(|&w| !st.in_tree[w]) {
            self.cand_neighbors[w] += 1;
            if self.cand_neighbors[w] == 1 {
                self.queue.insert((st.unvisited[w], w));
            }
        }
    }

    fn retire(&mut self, g: &Graph, st: &HeuristicState, x: VertexId) {
        self.in_cand[x] = false;
        for w in g.neighbors(x).filter(|&w| !st.in_tree[w]) {
            self.cand_neighbors[w] -= 1;
            if self.cand_neighbors[w] == 0 {
                self.queue.remove(&(st.unvisited[w], w));
            }
        }
    }

    /// Moves `v` into the tree, keeping the frontier keys current.
    fn enter(&mut self, g: &Graph, st: &mut HeuristicState, v: VertexId) {
        self.queue.remove(&(st.unvisited[v], v));
        st.in_tree[v] = true;
        for w in g.neighbors(v) {
            if !st.in_tree[w] && self.cand_neighbors[w] > 0 {
                self.queue.remove(&(st.unvisited[w], w));
                self.queue.insert((st.unvisited[w] - 1, w));
            }
            st.unvisited[w] -= 1;
        }
    }
}

pub fn multi_path_expanding_with(g: &Graph, overlay: &Overlay) -> Result<SpanningTree> {
    g.require_connected()?;
    let mut st = HeuristicState::with_overlay(g, overlay);
    if g.n() <= 1 {
        return Ok(finish(g, overlay, Vec::new()));
    }
    let mut fr = Frontier {
        in_cand: vec![false; g.n()],
        cand_neighbors: vec![0; g.n()],
        queue: BTreeSet::new(),
    };
    let first = start_restart_select(g, &st, false)?;
    fr.enter(g, &mut st, first);

    while !st.is_spanning(g) {
        let u = start_restart_select(g, &st, true)?;
        fr.add_candidate(g, &st, u);
        while let Some(&(_, v)) = fr.queue.first() {
            let u = g
                .neighbors(v)
                .find(|&w| fr.in_cand[w])
                .expect("frontier vertex has a candidate neighbor");
            st.link(u, v);
            fr.enter(g, &mut st, v);
            if st.tree_degree[u] == 2 && !overlay.preferred[u] {
                fr.retire(g, &st, u);
            }
            if st.tree_degree[v] != 2 || overlay.preferred[v] {
                fr.add_candidate(g, &st, v);
            }
        }
    }
    Ok(finish(g, overlay, st.tree_edges))
}

/// The better of the two heuristics; ties keep the path-expanding tree.
pub fn best_heuristic(g: &Graph, lb: &LowerBoundResult) -> Result<SpanningTree> {
    best_heuristic_with(g, &Overlay::plain(g, lb))
}

pub fn best_heuristic_with(g: &Graph, overlay: &Overlay) -> Result<SpanningTree> {
    let path = path_expanding_with(g, overlay)?;
    let multi = multi_path_expanding_with(g, overlay)?;
    Ok(if multi.branches() < path.branches() { multi } else { path })
}
