//! Finite simple undirected graphs on opaque integer vertex ids.
//!
//! Everything that touches an infinite graph eventually lands here: windows of
//! lazy graphs are materialised as [`FiniteGraph`]s and all checks run on them.

mod connectivity;
mod io;

pub use connectivity::{components, is_connected, is_k_connected, minimal_separators};
pub use io::{parse_edge_list, write_edge_list};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// An unordered vertex pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Panics on a loop; simple graphs have none.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert_ne!(u, v, "loop {u}-{v}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

/// The edge set `δ(side)` of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Separator {
    pub vertices: Vec<VertexId>,
    pub minimal: bool,
}

impl FiniteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertices and edges. Loops and edges to unlisted
    /// vertices are rejected; duplicate edges collapse.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for (u, v) in edges {
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            if !adj.contains_key(&u) || !adj.contains_key(&v) {
                return Err(Error::input(format!(
                    "edge {u}-{v} has an unknown endpoint"
                )));
            }
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Ok(FiniteGraph { adj })
    }

    /// Vertex set is the set of endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let vs: BTreeSet<_> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self::from_parts(vs, edges)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert_ne!(u, v);
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        static EMPTY: BTreeSet<VertexId> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| Edge(u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    fn check_subset<'a>(&self, xs: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        for v in xs {
            if !self.contains(*v) {
                return Err(Error::input(format!("unknown vertex {v}")));
            }
        }
        Ok(())
    }

    /// `G[xs]`.
    pub fn induced_subgraph(&self, xs: &BTreeSet<VertexId>) -> Result<FiniteGraph> {
        self.check_subset(xs)?;
        Ok(self.induced_unchecked(xs))
    }

    pub(crate) fn induced_unchecked(&self, xs: &BTreeSet<VertexId>) -> FiniteGraph {
        let adj = xs
            .iter()
            .filter(|v| self.contains(**v))
            .map(|&v| {
                let ns = self
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|w| xs.contains(w))
                    .collect();
                (v, ns)
            })
            .collect();
        FiniteGraph { adj }
    }

    /// `G - xs`; unknown ids are ignored.
    pub fn without(&self, xs: &BTreeSet<VertexId>) -> FiniteGraph {
        let keep: BTreeSet<_> = self.vertices().filter(|v| !xs.contains(v)).collect();
        self.induced_unchecked(&keep)
    }

    pub fn without_vertex(&self, v: VertexId) -> FiniteGraph {
        self.without(&BTreeSet::from([v]))
    }

    /// Breadth-first distances from a set of sources.
    pub fn distances_from(&self, sources: &BTreeSet<VertexId>) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.contains(s) && dist.insert(s, 0).is_none() {
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &w in self.neighbors(u) {
                if !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Exact-distance classes from `root`: index `i` holds the vertices at
    /// distance exactly `i`. Unreachable vertices are omitted.
    pub fn distance_classes(&self, root: VertexId) -> Result<Vec<BTreeSet<VertexId>>> {
        self.check_subset([&root])?;
        Ok(classes_from_distances(
            &self.distances_from(&BTreeSet::from([root])),
        ))
    }

    /// Shortest path with smallest-id predecessor choice, or `None`.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
        let dist = self.distances_from(&BTreeSet::from([to]));
        dist.get(&from)?;
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let d = dist[&cur];
            cur = *self
                .neighbors(cur)
                .iter()
                .find(|w| dist.get(w) == Some(&(d - 1)))?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn cut_edges(&self, side: &BTreeSet<VertexId>) -> Cut {
        let edges = side
            .iter()
            .flat_map(|&u| {
                self.neighbors(u)
                    .iter()
                    .filter(|w| !side.contains(w))
                    .map(move |&w| Edge::new(u, w))
            })
            .collect();
        Cut {
            side: side.clone(),
            edges,
        }
    }

    /// All pairs adjacent; vacuous for fewer than two vertices.
    pub fn is_clique(&self, xs: &BTreeSet<VertexId>) -> bool {
        let v: Vec<_> = xs.iter().copied().collect();
        v.iter()
            .enumerate()
            .all(|(i, &a)| v[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Dense index view used by the search-heavy modules.
    pub(crate) fn dense(&self) -> Dense {
        Dense::new(self)
    }
}

pub(crate) fn classes_from_distances(dist: &BTreeMap<VertexId, usize>) -> Vec<BTreeSet<VertexId>> {
    let depth = dist.values().copied().max().map_or(0, |d| d + 1);
    let mut classes = vec![BTreeSet::new(); depth];
    for (&v, &d) in dist {
        classes[d].insert(v);
    }
    classes
}

/// Index-based adjacency with an `n × n` matrix.
#[derive(Debug, Clone)]
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Dense {
    fn new(g: &FiniteGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut matrix = vec![false; n * n];
        let adj = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                g.neighbors(v)
                    .iter()
                    .map(|w| {
                        let j = index[w];
                        matrix[i * n + j] = true;
                        j
                    })
                    .collect()
            })
            .collect();
        Dense { ids, adj, matrix }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.ids.len() + j]
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> FiniteGraph {
        FiniteGraph::from_edges((0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    #[test]
    fn induced_on_triangle_pair() {
        let tri = FiniteGraph::from_edges([(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = tri.induced_subgraph(&set(&[0, 1])).unwrap();
        assert_eq!(h.edge_set(), BTreeSet::from([Edge::new(0, 1)]));
        assert!(tri.induced_subgraph(&BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn induced_on_path_keeps_isolated_vertex() {
        let h = path(4).induced_subgraph(&set(&[0, 2, 3])).unwrap();
        assert_eq!(h.vertex_set(), set(&[0, 2, 3]));
        assert_eq!(h.edge_set(), BTreeSet::from([Edge::new(2, 3)]));
        assert_eq!(h.degree(0), 0);
    }

    #[test]
    fn induced_rejects_unknown() {
        assert!(matches!(
            path(3).induced_subgraph(&set(&[7])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn distance_classes_on_path_and_claw() {
        let c = path(3).distance_classes(0).unwrap();
        assert_eq!(c, vec![set(&[0]), set(&[1]), set(&[2])]);
        let claw = FiniteGraph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            claw.distance_classes(0).unwrap(),
            vec![set(&[0]), set(&[1, 2, 3])]
        );
        assert!(claw.distance_classes(9).is_err());
    }

    #[test]
    fn distance_classes_of_blown_up_path() {
        // 2-blow-up of P3: cliques {0,1}, {2,3}, {4,5}
        let mut g = FiniteGraph::new();
        for c in 0..3u32 {
            g.add_edge(2 * c, 2 * c + 1);
            if c > 0 {
                for a in 0..2 {
                    for b in 0..2 {
                        g.add_edge(2 * (c - 1) + a, 2 * c + b);
                    }
                }
            }
        }
        // 0 sees its clique-mate and the next clique at once
        let sizes: Vec<_> = g
            .distance_classes(0)
            .unwrap()
            .iter()
            .map(BTreeSet::len)
            .collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn cut_edges_examples() {
        let c4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cut = c4.cut_edges(&set(&[0, 1]));
        assert_eq!(
            cut.edges,
            BTreeSet::from([Edge::new(3, 0), Edge::new(1, 2)])
        );
        assert!(c4.cut_edges(&c4.vertex_set()).edges.is_empty());
        let p4 = path(4);
        let cut = p4.cut_edges(&set(&[0, 2]));
        assert_eq!(
            cut.edges,
            BTreeSet::from([Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)])
        );
    }

    #[test]
    fn clique_checks() {
        let claw = FiniteGraph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(claw.is_clique(&set(&[2])));
        assert!(!claw.is_clique(&set(&[1, 2, 3])));
        let tri = FiniteGraph::from_edges([(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.is_clique(&tri.vertex_set()));
    }

    #[test]
    fn shortest_path_prefers_small_ids() {
        let c4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.shortest_path(0, 2), Some(vec![0, 1, 2]));
    }
}
