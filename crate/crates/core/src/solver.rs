//! Exact minimum-branch spanning trees by branch and bound over edges.
//!
//! A search node fixes some edges in and some out. Before bounding, a node is
//! closed under two implications: an undecided edge whose endpoints are already
//! joined by fixed-in edges is fixed out, and an undecided edge that is a
//! bridge of the non-excluded graph is fixed in. A node whose non-excluded
//! edges no longer connect the graph is infeasible.
//!
//! The node bound counts vertices that must be branches in every completion.
//! Removing a vertex `v` from the non-excluded graph leaves some pieces; a
//! spanning tree needs at least one edge from `v` into every piece, and every
//! fixed-in edge is in the tree, so `v`'s tree degree is at least the sum over
//! pieces of `max(1, fixed-in edges into the piece)`. A vertex is *open* when
//! it counts toward the objective, is not forced, and could still exceed
//! degree two. A node without open vertices is solved exactly by any
//! completion. Otherwise we branch on an undecided edge at the open vertex of
//! highest remaining degree, exploring the exclusion first.
//!
//! The same engine serves whole graphs and decomposition components: a
//! component carries extra degrees and exempt split copies.

use std::time::{Duration, Instant};

use log::debug;

use crate::bound::obligatory_branch_bound;
use crate::decompose::{decompose, decomposed_objective, recombine, weighted_branch_count, Component};
use crate::error::{MbvError, Result};
use crate::graph::{Edge, EdgeId, Graph, SpanningTree};
use crate::heuristics::{best_heuristic, best_heuristic_with, Overlay};
use crate::structure::LowLink;
use crate::union_find::UnionFind;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub time_limit: Option<Duration>,
    pub use_warm_start: bool,
    pub node_limit: Option<u64>,
    /// Search stops once `incumbent - bound` drops below this value.
    pub absolute_gap_tolerance: f64,
    /// Use piece-aware degree bounds instead of plain fixed-in degrees.
    pub strengthen_bound: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_limit: None,
            use_warm_start: true,
            node_limit: None,
            absolute_gap_tolerance: 0.9999,
            strengthen_bound: true,
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if let Some(t) = self.time_limit {
            if t.is_zero() {
                return Err(MbvError::InvalidOption("time limit must be positive".into()));
            }
        }
        if self.absolute_gap_tolerance.is_nan() || self.absolute_gap_tolerance <= 0.0 {
            return Err(MbvError::InvalidOption("gap tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub tree: SpanningTree,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Bound of the root node after propagation.
    pub root_bound: usize,
}

impl SolveReport {
    pub fn gap_percent(&self) -> f64 {
        gap_percent(self.lower_bound, self.upper_bound)
    }
}

pub fn gap_percent(lower: usize, upper: usize) -> f64 {
    if upper == 0 {
        0.0
    } else {
        100.0 * (upper.saturating_sub(lower)) as f64 / upper as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fix {
    Free,
    In,
    Out,
}

enum Outcome {
    Infeasible,
    /// No open vertex: the completion is optimal for this node.
    Solved { value: usize, tree: Vec<EdgeId> },
    Branch { bound: usize, edge: EdgeId },
}

struct Engine<'a> {
    g: &'a Graph,
    extra: &'a [usize],
    counted: &'a [bool],
    strengthen: bool,
}

impl Engine<'_> {
    fn evaluate(&self, fix: &mut [Fix]) -> Outcome {
        let g = self.g;
        let n = g.n();

        let mut uf = UnionFind::new(n);
        for (id, f) in fix.iter().enumerate() {
            if *f == Fix::In {
                let e = g.edge(id);
                if !uf.union(e.u, e.v) {
                    return Outcome::Infeasible;
                }
            }
        }
        for (id, f) in fix.iter_mut().enumerate() {
            if *f == Fix::Free {
                let e = g.edge(id);
                if uf.same(e.u, e.v) {
                    *f = Fix::Out;
                }
            }
        }

        let link = LowLink::new(g, |id| fix[id] != Fix::Out);
        if link.roots().len() > 1 {
            return Outcome::Infeasible;
        }
        for &id in link.bridges() {
            fix[id] = Fix::In;
        }

        let mut fixed_deg = vec![0usize; n];
        let mut alive_deg = vec![0usize; n];
        for (id, f) in fix.iter().enumerate() {
            if *f != Fix::Out {
                let e = g.edge(id);
                alive_deg[e.u] += 1;
                alive_deg[e.v] += 1;
                if *f == Fix::In {
                    fixed_deg[e.u] += 1;
                    fixed_deg[e.v] += 1;
                }
            }
        }

        let mut bound = 0;
        let mut open: Option<usize> = None;
        let mut per_piece = Vec::new();
        for v in 0..n {
            if !self.counted[v] || alive_deg[v] + self.extra[v] <= 2 {
                continue;
            }
            let min_deg = if self.strengthen {
                per_piece.clear();
                per_piece.resize(link.pieces(v).max(1), 0usize);
                for &(u, id) in g.incident(v) {
                    if fix[id] == Fix::In {
                        per_piece[link.piece_of(v, u)] += 1;
                    }
                }
                per_piece.iter().map(|&c| c.max(1)).sum::<usize>()
            } else {
                fixed_deg[v]
            };
            if min_deg + self.extra[v] > 2 {
                bound += 1;
            } else if open.is_none_or(|o| alive_deg[v] > alive_deg[o]) {
                open = Some(v);
            }
        }

        match open {
            Some(v) => {
                let edge = g
                    .incident(v)
                    .iter()
                    .map(|&(_, id)| id)
                    .filter(|&id| fix[id] == Fix::Free)
                    .min()
                    .expect("open vertex has an undecided edge");
                Outcome::Branch { bound, edge }
            }
            None => {
                let mut tree: Vec<EdgeId> = Vec::with_capacity(n.saturating_sub(1));
                let mut uf = UnionFind::new(n);
                for pass in [Fix::In, Fix::Free] {
                    for (id, f) in fix.iter().enumerate() {
                        let e = g.edge(id);
                        if *f == pass && uf.union(e.u, e.v) {
                            tree.push(id);
                        }
                    }
                }
                let value = self.value(&tree);
                debug_assert_eq!(value, bound);
                Outcome::Solved { value, tree }
            }
        }
    }

    fn value(&self, tree: &[EdgeId]) -> usize {
        let edges: Vec<Edge> = tree.iter().map(|&id| self.g.edge(id)).collect();
        weighted_branch_count(self.g, &edges, self.extra, self.counted)
    }
}

struct Budget {
    start: Instant,
    time_limit: Option<Duration>,
    node_limit: Option<u64>,
}

impl Budget {
    fn exhausted(&self, nodes: u64) -> bool {
        self.node_limit.is_some_and(|l| nodes >= l)
            || self.time_limit.is_some_and(|t| self.start.elapsed() >= t)
    }
}

/// Branch and bound with an objective given by extra degrees and counted flags.
fn search(
    g: &Graph,
    extra: &[usize],
    counted: &[bool],
    warm: Option<SpanningTree>,
    opts: &SolveOptions,
    budget: &Budget,
) -> SolveReport {
    let engine = Engine {
        g,
        extra,
        counted,
        strengthen: opts.strengthen_bound,
    };
    let tol = opts.absolute_gap_tolerance;
    let closes = |incumbent: usize, bound: usize| (incumbent as f64) - (bound as f64) < tol;

    let mut incumbent: Option<(usize, Vec<Edge>)> = warm.map(|t| (t.branches(), t.into_edges()));
    let mut nodes = 0u64;
    let mut root = vec![Fix::Free; g.m()];
    nodes += 1;
    let (root_bound, mut stack) = match engine.evaluate(&mut root) {
        Outcome::Infeasible => unreachable!("connected input"),
        Outcome::Solved { value, tree } => {
            if incumbent.as_ref().is_none_or(|(v, _)| value < *v) {
                incumbent = Some((value, tree.iter().map(|&id| g.edge(id)).collect()));
            }
            (value, Vec::new())
        }
        Outcome::Branch { bound, edge } => (bound, children(&root, edge, bound).to_vec()),
    };

    let mut aborted_bound: Option<usize> = None;
    while let Some((mut fix, parent_bound)) = stack.pop() {
        if let Some((best, _)) = &incumbent {
            if closes(*best, parent_bound) {
                continue;
            }
        }
        if budget.exhausted(nodes) {
            let open_min = stack.iter().map(|(_, b)| *b).min().unwrap_or(parent_bound);
            aborted_bound = Some(open_min.min(parent_bound));
            break;
        }
        nodes += 1;
        match engine.evaluate(&mut fix) {
            Outcome::Infeasible => {}
            Outcome::Solved { value, tree } => {
                if incumbent.as_ref().is_none_or(|(v, _)| value < *v) {
                    debug!("incumbent {value} after {nodes} nodes");
                    incumbent = Some((value, tree.iter().map(|&id| g.edge(id)).collect()));
                }
            }
            Outcome::Branch { bound, edge } => {
                if incumbent.as_ref().is_none_or(|(v, _)| !closes(*v, bound)) {
                    stack.extend(children(&fix, edge, bound));
                }
            }
        }
    }

    let (upper, edges) = incumbent.unwrap_or_else(|| {
        let edges = any_spanning_tree(g);
        (weighted_branch_count(g, &edges, extra, counted), edges)
    });
    let lower = match aborted_bound {
        Some(b) => b.min(upper),
        None => upper,
    };
    SolveReport {
        lower_bound: lower,
        upper_bound: upper,
        tree: SpanningTree::new_unchecked(edges, upper),
        optimal: closes(upper, lower),
        nodes_explored: nodes,
        elapsed: budget.start.elapsed(),
        root_bound: root_bound.min(upper),
    }
}

/// Include child below exclude child, so exclusion is explored first.
fn children(fix: &[Fix], edge: EdgeId, bound: usize) -> [(Vec<Fix>, usize); 2] {
    let mut with = fix.to_vec();
    with[edge] = Fix::In;
    let mut without = fix.to_vec();
    without[edge] = Fix::Out;
    [(with, bound), (without, bound)]
}

fn any_spanning_tree(g: &Graph) -> Vec<Edge> {
    let mut uf = UnionFind::new(g.n());
    g.edges().iter().copied().filter(|e| uf.union(e.u, e.v)).collect()
}

/// Exact search on a whole graph.
pub fn solve_plain(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    g.require_connected()?;
    let budget = Budget {
        start: Instant::now(),
        time_limit: opts.time_limit,
        node_limit: opts.node_limit,
    };
    let warm = if opts.use_warm_start {
        Some(best_heuristic(g, &obligatory_branch_bound(g)?)?)
    } else {
        None
    };
    let extra = vec![0; g.n()];
    let counted = vec![true; g.n()];
    Ok(search(g, &extra, &counted, warm, opts, &budget))
}

/// Exact search on one decomposition component.
pub fn solve_component(c: &Component, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let budget = Budget {
        start: Instant::now(),
        time_limit: opts.time_limit,
        node_limit: opts.node_limit,
    };
    solve_component_within(c, opts, &budget)
}

fn solve_component_within(c: &Component, opts: &SolveOptions, budget: &Budget) -> Result<SolveReport> {
    c.graph.require_connected()?;
    let counted = c.counted();
    if c.graph.m() <= 1 {
        // single vertex or single edge: the only tree
        let edges = c.graph.edges().to_vec();
        let value = weighted_branch_count(&c.graph, &edges, &c.gamma, &counted);
        return Ok(SolveReport {
            lower_bound: value,
            upper_bound: value,
            tree: SpanningTree::new_unchecked(edges, value),
            optimal: true,
            nodes_explored: 0,
            elapsed: budget.start.elapsed(),
            root_bound: value,
        });
    }
    let warm = if opts.use_warm_start {
        Some(best_heuristic_with(&c.graph, &Overlay::component(c))?)
    } else {
        None
    };
    Ok(search(&c.graph, &c.gamma, &counted, warm, opts, budget))
}

/// Decompose, solve every component, and recombine.
///
/// The remaining time (and node) budget is shared among the unsolved
/// components in proportion to their edge counts, recomputed after each one.
pub fn solve_with_decomposition(g: &Graph, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let start = Instant::now();
    let lb = obligatory_branch_bound(g)?;
    let d = decompose(g, &lb)?;

    let mut remaining_edges: usize = d.components.iter().map(|c| c.graph.m()).sum();
    let mut nodes_used = 0u64;
    let mut uppers = Vec::with_capacity(d.components.len());
    let mut lowers = Vec::with_capacity(d.components.len());
    let mut roots = Vec::with_capacity(d.components.len());
    let mut trees = Vec::with_capacity(d.components.len());
    let mut optimal = true;

    for c in &d.components {
        let share = |total: f64| {
            if remaining_edges == 0 {
                total
            } else {
                total * c.graph.m() as f64 / remaining_edges as f64
            }
        };
        let time_limit = opts.time_limit.map(|t| {
            let left = t.saturating_sub(start.elapsed()).as_secs_f64();
            Duration::from_secs_f64(share(left)).max(Duration::from_micros(1))
        });
        let node_limit = opts
            .node_limit
            .map(|l| (share(l.saturating_sub(nodes_used) as f64) as u64).max(1));
        let budget = Budget {
            start: Instant::now(),
            time_limit,
            node_limit,
        };
        let r = solve_component_within(c, opts, &budget)?;
        remaining_edges -= c.graph.m();
        nodes_used += r.nodes_explored;
        optimal &= r.optimal;
        uppers.push(r.upper_bound);
        lowers.push(r.lower_bound);
        roots.push(r.root_bound);
        trees.push(r.tree.into_edges());
    }

    let tree = recombine(&d, &trees)?;
    let upper = decomposed_objective(lb.value(), &uppers);
    debug_assert_eq!(tree.branches(), upper);
    let lower = decomposed_objective(lb.value(), &lowers);
    Ok(SolveReport {
        lower_bound: lower,
        upper_bound: upper,
        tree,
        optimal: optimal || (upper as f64 - lower as f64) < opts.absolute_gap_tolerance,
        nodes_explored: nodes_used,
        elapsed: start.elapsed(),
        root_bound: decomposed_objective(lb.value(), &roots),
    })
}
