//! Splitting obligatory branches and deleting cut edges.
//!
//! Every obligatory branch `v` is replaced by one copy per component of
//! `G - v`, each copy adjacent to `v`'s neighbors in that component. Every cut
//! edge of `G` is then deleted and its endpoints are credited one unit of extra
//! degree. The connected pieces that remain are solved independently; their
//! optimal values plus the number of obligatory branches give the optimum of
//! `G`, and their trees plus the cut edges give an optimal tree of `G`.

use serde::Serialize;

use crate::bound::LowerBoundResult;
use crate::error::{MbvError, Result};
use crate::graph::{forms_spanning_tree, is_spanning_tree, tree_degrees, Edge, Graph, SpanningTree, VertexId};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Original(VertexId),
    /// Copy number `part` (0-based) of the obligatory branch `vertex`.
    SplitCopy { vertex: VertexId, part: usize },
}

impl Provenance {
    pub fn is_original(&self) -> bool {
        matches!(self, Provenance::Original(_))
    }

    pub fn source(&self) -> VertexId {
        match *self {
            Provenance::Original(v) => v,
            Provenance::SplitCopy { vertex, .. } => vertex,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    pub provenance: Vec<Provenance>,
    /// Removed cut edges incident to each local vertex; zero for split copies.
    pub gamma: Vec<usize>,
    /// Degree in the source graph, for original vertices only.
    pub original_degree: Vec<Option<usize>>,
    /// Source-graph edge of every local edge, indexed by local edge id.
    pub edge_origin: Vec<Edge>,
}

impl Component {
    pub fn counted(&self) -> Vec<bool> {
        self.provenance.iter().map(Provenance::is_original).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub bound: LowerBoundResult,
    pub cut_edges: Vec<Edge>,
    source_n: usize,
    source_m: usize,
}

impl Decomposition {
    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn source_m(&self) -> usize {
        self.source_m
    }

    /// Obligatory branches removed (OB).
    pub fn obligatory_count(&self) -> usize {
        self.bound.value()
    }

    /// Cut edges removed (CE).
    pub fn cut_edge_count(&self) -> usize {
        self.cut_edges.len()
    }
}

pub fn decompose(g: &Graph, lb: &LowerBoundResult) -> Result<Decomposition> {
    g.require_connected()?;
    if lb.fingerprint() != g.fingerprint() {
        return Err(MbvError::StaleBound);
    }
    let report = lb.report();
    let n = g.n();
    let obligatory = lb.obligatory_mask(n);

    // Vertex ids of the split graph: surviving originals first, then copies.
    let mut image = vec![usize::MAX; n];
    let mut provenance = Vec::new();
    for v in (0..n).filter(|&v| !obligatory[v]) {
        image[v] = provenance.len();
        provenance.push(Provenance::Original(v));
    }

    // For each edge, the split-graph ids of its endpoints.
    let mut ends: Vec<[usize; 2]> = g.edges().iter().map(|e| [image[e.u], image[e.v]]).collect();
    let mut piece_of_neighbor = vec![usize::MAX; n];
    for &v in lb.obligatory() {
        let groups = report.neighbor_groups(g, v);
        debug_assert_eq!(Some(&groups.len()), lb.alpha().get(&v));
        let first = provenance.len();
        for (part, members) in groups.iter().enumerate() {
            provenance.push(Provenance::SplitCopy { vertex: v, part });
            for &u in members {
                piece_of_neighbor[u] = part;
            }
        }
        for &(u, e) in g.incident(v) {
            let side = usize::from(g.edge(e).v == v);
            ends[e][side] = first + piece_of_neighbor[u];
        }
    }

    let total = provenance.len();
    let mut gamma = vec![0; total];
    for e in report.bridges() {
        for x in [e.u, e.v] {
            if !obligatory[x] {
                gamma[image[x]] += 1;
            }
        }
    }

    let mut uf = UnionFind::new(total);
    for (id, end) in ends.iter().enumerate() {
        if !report.is_bridge(id) {
            uf.union(end[0], end[1]);
        }
    }
    let mut component_index = vec![usize::MAX; total];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..total {
        let root = uf.find(x);
        if component_index[root] == usize::MAX {
            component_index[root] = members.len();
            members.push(Vec::new());
        }
        members[component_index[root]].push(x);
    }
    let mut local = vec![0; total];
    for list in &members {
        for (i, &x) in list.iter().enumerate() {
            local[x] = i;
        }
    }

    let mut pairs: Vec<Vec<(usize, usize, Edge)>> = vec![Vec::new(); members.len()];
    for (id, end) in ends.iter().enumerate() {
        if report.is_bridge(id) {
            continue;
        }
        let k = component_index[uf.find(end[0])];
        let (a, b) = (local[end[0]], local[end[1]]);
        pairs[k].push((a.min(b), a.max(b), g.edge(id)));
    }

    let mut components = Vec::with_capacity(members.len());
    for (list, mut local_edges) in members.into_iter().zip(pairs) {
        local_edges.sort_unstable();
        let edge_pairs: Vec<_> = local_edges.iter().map(|&(a, b, _)| (a, b)).collect();
        let graph = Graph::new(list.len(), &edge_pairs)?;
        let prov: Vec<_> = list.iter().map(|&x| provenance[x]).collect();
        let original_degree = prov
            .iter()
            .map(|p| match *p {
                Provenance::Original(v) => Some(g.degree(v)),
                Provenance::SplitCopy { .. } => None,
            })
            .collect();
        components.push(Component {
            graph,
            provenance: prov,
            gamma: list.iter().map(|&x| gamma[x]).collect(),
            original_degree,
            edge_origin: local_edges.into_iter().map(|(_, _, e)| e).collect(),
        });
    }

    Ok(Decomposition {
        components,
        bound: lb.clone(),
        cut_edges: report.bridges().to_vec(),
        source_n: n,
        source_m: g.m(),
    })
}

/// Component objective of a local spanning tree: original vertices whose tree
/// degree plus extra degree exceeds two.
pub fn component_branch_count(c: &Component, tree: &[Edge]) -> Result<usize> {
    if !is_spanning_tree(&c.graph, tree) {
        return Err(MbvError::NotASpanningTree { component: None });
    }
    Ok(weighted_branch_count(&c.graph, tree, &c.gamma, &c.counted()))
}

pub(crate) fn weighted_branch_count(g: &Graph, tree: &[Edge], extra: &[usize], counted: &[bool]) -> usize {
    tree_degrees(g.n(), tree)
        .into_iter()
        .enumerate()
        .filter(|&(v, d)| counted[v] && d + extra[v] > 2)
        .count()
}

/// Maps component trees back to `G` and adds the cut edges.
pub fn recombine(d: &Decomposition, trees: &[Vec<Edge>]) -> Result<SpanningTree> {
    if trees.len() != d.components.len() {
        return Err(MbvError::NotASpanningTree { component: None });
    }
    let mut edges = d.cut_edges.clone();
    for (k, (c, tree)) in d.components.iter().zip(trees).enumerate() {
        if !is_spanning_tree(&c.graph, tree) {
            return Err(MbvError::NotASpanningTree { component: Some(k) });
        }
        edges.extend(tree.iter().map(|e| {
            let id = c.graph.edge_id(e.u, e.v).expect("checked above");
            c.edge_origin[id]
        }));
    }
    if !forms_spanning_tree(d.source_n, &edges) {
        return Err(MbvError::NotASpanningTree { component: None });
    }
    let branches = crate::graph::branch_count(d.source_n, &edges);
    Ok(SpanningTree::new_unchecked(edges, branches))
}

/// Total objective from the obligatory count and per-component values.
pub fn decomposed_objective(obligatory: usize, component_values: &[usize]) -> usize {
    obligatory + component_values.iter().sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::obligatory_branch_bound;
    use crate::graph::fixtures::*;
    use crate::graph::branch_count;

    fn split(g: &Graph) -> Decomposition {
        decompose(g, &obligatory_branch_bound(g).unwrap()).unwrap()
    }

    #[test]
    fn two_triangles_split_at_bridge() {
        let g = two_triangles();
        let d = split(&g);
        assert_eq!(d.obligatory_count(), 0);
        assert_eq!(d.cut_edges, vec![Edge::new(2, 3)]);
        assert_eq!(d.components.len(), 2);
        for c in &d.components {
            assert_eq!(c.graph.n(), 3);
            assert_eq!(c.graph.m(), 3);
        }
        assert_eq!(d.components[0].gamma, vec![0, 0, 1]);
        assert_eq!(d.components[1].gamma, vec![1, 0, 0]);
        assert_eq!(d.components[1].provenance[0], Provenance::Original(3));
    }

    #[test]
    fn spider_falls_apart() {
        let g = spider();
        let d = split(&g);
        assert_eq!(d.bound.obligatory(), &[0]);
        assert_eq!(d.cut_edge_count(), 6);
        assert!(d.components.iter().all(|c| c.graph.m() == 0));
        // six leg vertices plus three copies
        assert_eq!(d.components.len(), 9);
        let copies = d
            .components
            .iter()
            .filter(|c| !c.provenance[0].is_original())
            .count();
        assert_eq!(copies, 3);
        let trees = vec![Vec::new(); d.components.len()];
        let t = recombine(&d, &trees).unwrap();
        assert_eq!(t.edges(), g.edges());
        assert_eq!(t.branches(), 1);
    }

    #[test]
    fn cycle_is_untouched() {
        let g = cycle(5);
        let d = split(&g);
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].graph, g);
        let tree = g.edges()[1..].to_vec();
        let t = recombine(&d, std::slice::from_ref(&tree)).unwrap();
        assert_eq!(t.edges(), &tree[..]);
        assert_eq!(t.branches(), 0);
    }

    #[test]
    fn recombined_triangles_are_branch_free() {
        let g = two_triangles();
        let d = split(&g);
        // bridge endpoints (local 2 in the first, local 0 in the second) as path ends
        let trees = vec![
            vec![Edge::new(0, 1), Edge::new(1, 2)],
            vec![Edge::new(0, 1), Edge::new(1, 2)],
        ];
        let t = recombine(&d, &trees).unwrap();
        assert!(is_spanning_tree(&g, t.edges()));
        assert_eq!(branch_count(6, t.edges()), 0);
        assert_eq!(t.branches(), 0);
    }

    #[test]
    fn triangle_component_objective() {
        let g = two_triangles();
        let d = split(&g);
        let c = &d.components[0];
        // local 2 (gamma 1) as endpoint
        assert_eq!(component_branch_count(c, &[Edge::new(0, 1), Edge::new(0, 2)]).unwrap(), 0);
        // local 2 in the middle
        assert_eq!(component_branch_count(c, &[Edge::new(0, 2), Edge::new(1, 2)]).unwrap(), 1);
        assert!(component_branch_count(c, &[Edge::new(0, 1)]).is_err());
    }

    #[test]
    fn split_copies_are_exempt() {
        // a star with five leaves joined in a ring through the centre's copies
        // has no obligatory branch; use a centre shared by three triangles instead
        let g = Graph::new(
            7,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)],
        )
        .unwrap();
        let d = split(&g);
        assert_eq!(d.bound.obligatory(), &[0]);
        assert_eq!(d.components.len(), 3);
        for c in &d.components {
            assert_eq!(c.graph.n(), 3);
            let copy = c.provenance.iter().position(|p| !p.is_original()).unwrap();
            // star on the copy: copy degree 2, never counted
            let others: Vec<_> = (0..3).filter(|&x| x != copy).collect();
            let tree = vec![Edge::new(copy, others[0]), Edge::new(copy, others[1])];
            assert_eq!(component_branch_count(c, &tree).unwrap(), 0);
        }
    }

    #[test]
    fn stale_bound_rejected() {
        let lb = obligatory_branch_bound(&star(3)).unwrap();
        assert_eq!(decompose(&cycle(4), &lb).unwrap_err(), MbvError::StaleBound);
    }

    #[test]
    fn objective_sum() {
        assert_eq!(decomposed_objective(2, &[1, 0, 3]), 6);
        assert_eq!(decomposed_objective(0, &[]), 0);
    }
}
