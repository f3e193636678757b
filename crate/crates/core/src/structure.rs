//! Articulation points with split counts, and bridges, from one iterative DFS.

use std::collections::BTreeMap;

use crate::graph::{connected_components, Edge, EdgeId, Graph, VertexId};

const UNSET: usize = usize::MAX;

/// DFS opening times and low points over the edges accepted by a filter.
///
/// Besides bridges this records, for every vertex `v`, how the neighbors of `v`
/// fall into the connected pieces of the DFS tree of `v` once `v` is removed:
/// a child subtree whose low point does not reach above `v` is its own piece,
/// everything else (the parent side) is piece 0.
#[derive(Debug, Clone)]
pub(crate) struct LowLink {
    tin: Vec<usize>,
    low: Vec<usize>,
    /// One past the last opening time inside the subtree of each vertex.
    end: Vec<usize>,
    parent: Vec<usize>,
    children: Vec<Vec<VertexId>>,
    /// Piece index of a child within its parent's split.
    child_piece: Vec<usize>,
    /// Number of pieces the vertex's own DFS tree falls into without it.
    pieces: Vec<usize>,
    roots: Vec<VertexId>,
    bridges: Vec<EdgeId>,
}

impl LowLink {
    pub(crate) fn new(g: &Graph, alive: impl Fn(EdgeId) -> bool) -> Self {
        let n = g.n();
        let mut tin = vec![UNSET; n];
        let mut low = vec![UNSET; n];
        let mut end = vec![0; n];
        let mut parent = vec![UNSET; n];
        let mut parent_edge = vec![UNSET; n];
        let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut roots = Vec::new();
        let mut bridges = Vec::new();
        let mut timer = 0;
        let mut stack: Vec<(VertexId, usize)> = Vec::new();

        for s in 0..n {
            if tin[s] != UNSET {
                continue;
            }
            roots.push(s);
            tin[s] = timer;
            low[s] = timer;
            timer += 1;
            stack.push((s, 0));
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                let adj = g.incident(v);
                if top.1 < adj.len() {
                    let (u, e) = adj[top.1];
                    top.1 += 1;
                    if e == parent_edge[v] || !alive(e) {
                        continue;
                    }
                    if tin[u] == UNSET {
                        parent[u] = v;
                        parent_edge[u] = e;
                        tin[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        children[v].push(u);
                        stack.push((u, 0));
                    } else {
                        low[v] = low[v].min(tin[u]);
                    }
                } else {
                    stack.pop();
                    end[v] = timer;
                    let p = parent[v];
                    if p != UNSET {
                        low[p] = low[p].min(low[v]);
                        if low[v] > tin[p] {
                            bridges.push(parent_edge[v]);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();

        let mut child_piece = vec![0; n];
        let mut pieces = vec![0; n];
        for v in 0..n {
            if parent[v] == UNSET {
                for (i, &c) in children[v].iter().enumerate() {
                    child_piece[c] = i;
                }
                pieces[v] = children[v].len();
            } else {
                let mut next = 1;
                for &c in &children[v] {
                    if low[c] >= tin[v] {
                        child_piece[c] = next;
                        next += 1;
                    }
                }
                pieces[v] = next;
            }
        }

        LowLink {
            tin,
            low,
            end,
            parent,
            children,
            child_piece,
            pieces,
            roots,
            bridges,
        }
    }

    pub(crate) fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub(crate) fn bridges(&self) -> &[EdgeId] {
        &self.bridges
    }

    /// Pieces of `v`'s own DFS tree left after deleting `v`.
    pub(crate) fn pieces(&self, v: VertexId) -> usize {
        self.pieces[v]
    }

    /// Piece of neighbor `u` (joined to `v` by an accepted edge) when `v` is removed.
    pub(crate) fn piece_of(&self, v: VertexId, u: VertexId) -> usize {
        let t = self.tin[u];
        if t > self.tin[v] && t < self.end[v] {
            let kids = &self.children[v];
            let idx = kids.partition_point(|&c| self.tin[c] <= t) - 1;
            let c = kids[idx];
            if self.parent[v] == UNSET || self.low[c] >= self.tin[v] {
                self.child_piece[c]
            } else {
                0
            }
        } else {
            0
        }
    }
}

/// Connectivity, articulation points with their split counts, and bridges.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    component_count: usize,
    component_of: Vec<usize>,
    articulation: BTreeMap<VertexId, usize>,
    bridges: Vec<Edge>,
    bridge_ids: Vec<EdgeId>,
    link: LowLink,
}

/// Runs in `O(n + m)`.
pub fn structural_report(g: &Graph) -> StructuralReport {
    let (component_count, component_of) = connected_components(g);
    let link = LowLink::new(g, |_| true);
    let mut articulation = BTreeMap::new();
    for v in 0..g.n() {
        if link.pieces(v) >= 2 {
            // pieces elsewhere in the graph stay separate as well
            articulation.insert(v, link.pieces(v) + component_count - 1);
        }
    }
    let bridge_ids = link.bridges().to_vec();
    let bridges = bridge_ids.iter().map(|&e| g.edge(e)).collect();
    StructuralReport {
        component_count,
        component_of,
        articulation,
        bridges,
        bridge_ids,
        link,
    }
}

impl StructuralReport {
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self) -> &[usize] {
        &self.component_of
    }

    /// Articulation points mapped to the number of components of `G - v`.
    pub fn articulation(&self) -> &BTreeMap<VertexId, usize> {
        &self.articulation
    }

    pub fn split_count(&self, v: VertexId) -> Option<usize> {
        self.articulation.get(&v).copied()
    }

    pub fn bridges(&self) -> &[Edge] {
        &self.bridges
    }

    /// Bridge edge ids, ascending.
    pub fn bridge_ids(&self) -> &[EdgeId] {
        &self.bridge_ids
    }

    pub fn is_bridge(&self, id: EdgeId) -> bool {
        self.bridge_ids.binary_search(&id).is_ok()
    }

    /// Neighbors of `v` grouped by the component of `G - v` they land in.
    /// Groups are ordered by their smallest member; members ascend.
    pub fn neighbor_groups(&self, g: &Graph, v: VertexId) -> Vec<Vec<VertexId>> {
        let mut groups = vec![Vec::new(); self.link.pieces(v).max(1)];
        for u in g.neighbors(v) {
            groups[self.link.piece_of(v, u)].push(u);
        }
        groups.retain(|grp| !grp.is_empty());
        groups.sort_by_key(|grp| grp[0]);
        groups
    }
}
