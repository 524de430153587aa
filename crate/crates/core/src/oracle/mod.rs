//! Brute-force ground truth on small graphs, independent of the constructions.
//!
//! Hamilton cycles and paths come from a subset dynamic program over
//! bitmasks. Prescribed-leaf trees enumerate the spanning trees of the
//! non-leaf part and check, by bipartite matching, whether the leaves can be
//! hung on so that no non-leaf vertex ends with degree below 2.

mod corpus;

use std::collections::BTreeSet;

pub use corpus::{
    exhaustive_connected, generate_corpus, random_sample, Corpus, Filter, Provenance,
};

use crate::error::{Error, Result};
use crate::graph::{components, Edge, FiniteGraph, VertexId};

/// Searches refuse larger graphs instead of silently running long.
pub const DEFAULT_CAP: usize = 14;

struct Bits {
    ids: Vec<VertexId>,
    adj: Vec<u32>,
}

fn bits(g: &FiniteGraph, cap: usize) -> Result<Bits> {
    if g.order() > cap {
        return Err(Error::input(format!(
            "oracle cap exceeded: {} vertices, cap {cap}",
            g.order()
        )));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let adj = ids
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .map(|w| 1u32 << ids.binary_search(w).unwrap())
                .fold(0, |a, b| a | b)
        })
        .collect();
    Ok(Bits { ids, adj })
}

/// `reach[mask][v]`: some path visits exactly `mask`, starting inside
/// `starts` and ending at `v`. Stored as a bitmask over `v`.
fn path_table(b: &Bits, starts: u32) -> Vec<u32> {
    let n = b.ids.len();
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        if starts >> v & 1 == 1 {
            reach[1 << v] |= 1 << v;
        }
    }
    for mask in 1..(1usize << n) {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            let mut next = b.adj[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    reach
}

/// Walks the table backwards from `end` over the full mask.
fn trace(b: &Bits, reach: &[u32], end: usize) -> Vec<VertexId> {
    let mut mask = reach.len() - 1;
    let mut v = end;
    let mut out = vec![b.ids[v]];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << v);
        let cands = reach[prev_mask] & b.adj[v];
        let u = cands.trailing_zeros() as usize;
        out.push(b.ids[u]);
        mask = prev_mask;
        v = u;
    }
    out.reverse();
    out
}

pub fn brute_hamilton_cycle(g: &FiniteGraph) -> Result<Option<BTreeSet<Edge>>> {
    brute_hamilton_cycle_capped(g, DEFAULT_CAP)
}

pub fn brute_hamilton_cycle_capped(g: &FiniteGraph, cap: usize) -> Result<Option<BTreeSet<Edge>>> {
    let b = bits(g, cap)?;
    let n = b.ids.len();
    if n < 3 {
        return Ok(None);
    }
    // every Hamilton cycle passes vertex 0, so paths start there
    let reach = path_table(&b, 1);
    let full = (1usize << n) - 1;
    let closing = reach[full] & b.adj[0];
    if closing == 0 {
        return Ok(None);
    }
    let order = trace(&b, &reach, closing.trailing_zeros() as usize);
    let mut edges: BTreeSet<Edge> = order.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    edges.insert(Edge::new(order[0], order[n - 1]));
    if !spans_as_cycle(g, &edges) {
        return Err(Error::internal("oracle produced an invalid Hamilton cycle"));
    }
    Ok(Some(edges))
}

fn spans_as_cycle(g: &FiniteGraph, edges: &BTreeSet<Edge>) -> bool {
    let deg_ok = g
        .vertices()
        .all(|v| edges.iter().filter(|e| e.contains(v)).count() == 2);
    let sub = FiniteGraph::from_parts(g.vertices(), edges.iter().map(|e| (e.lo(), e.hi())));
    deg_ok
        && edges.len() == g.order()
        && edges.iter().all(|e| g.has_edge(e.lo(), e.hi()))
        && sub.is_ok_and(|s| components(&s).len() == 1)
}

/// A Hamilton path, optionally from `ends.0` to `ends.1`.
pub fn brute_hamilton_path(
    g: &FiniteGraph,
    ends: Option<(VertexId, VertexId)>,
) -> Result<Option<Vec<VertexId>>> {
    brute_hamilton_path_capped(g, ends, DEFAULT_CAP)
}

pub fn brute_hamilton_path_capped(
    g: &FiniteGraph,
    ends: Option<(VertexId, VertexId)>,
    cap: usize,
) -> Result<Option<Vec<VertexId>>> {
    let b = bits(g, cap)?;
    let n = b.ids.len();
    if n == 0 {
        return Ok(None);
    }
    let index = |v: VertexId| {
        b.ids
            .binary_search(&v)
            .map_err(|_| Error::input(format!("endpoint {v} is not in the graph")))
    };
    let (starts, targets) = match ends {
        Some((s, t)) => {
            let (s, t) = (index(s)?, index(t)?);
            if s == t && n > 1 {
                return Ok(None);
            }
            (1u32 << s, 1u32 << t)
        }
        None => (u32::MAX, u32::MAX),
    };
    let reach = path_table(&b, starts);
    let hits = reach[(1usize << n) - 1] & targets;
    if hits == 0 {
        return Ok(None);
    }
    let path = trace(&b, &reach, hits.trailing_zeros() as usize);
    let valid = path.len() == n
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && path.iter().collect::<BTreeSet<_>>().len() == n;
    if !valid {
        return Err(Error::internal("oracle produced an invalid Hamilton path"));
    }
    Ok(Some(path))
}

/// A spanning tree whose leaves are exactly `leaves`.
pub fn brute_tree_with_leaves(
    g: &FiniteGraph,
    leaves: &BTreeSet<VertexId>,
) -> Result<Option<BTreeSet<Edge>>> {
    brute_tree_with_leaves_capped(g, leaves, DEFAULT_CAP)
}

pub fn brute_tree_with_leaves_capped(
    g: &FiniteGraph,
    leaves: &BTreeSet<VertexId>,
    cap: usize,
) -> Result<Option<BTreeSet<Edge>>> {
    let b = bits(g, cap)?;
    if leaves.len() < 2 {
        return Err(Error::input("at least two leaves must be prescribed"));
    }
    if let Some(v) = leaves.iter().find(|v| !g.contains(**v)) {
        return Err(Error::input(format!("leaf {v} is not in the graph")));
    }
    let n = b.ids.len();
    if n == 2 {
        let (u, v) = (b.ids[0], b.ids[1]);
        return Ok(g.has_edge(u, v).then(|| BTreeSet::from([Edge::new(u, v)])));
    }
    let leaf_mask: u32 = (0..n)
        .filter(|&i| leaves.contains(&b.ids[i]))
        .map(|i| 1 << i)
        .sum();
    let inner: Vec<usize> = (0..n).filter(|&i| leaf_mask >> i & 1 == 0).collect();
    if inner.is_empty() {
        return Ok(None);
    }
    let inner_mask = !leaf_mask & ((1u32 << n) - 1);
    // every leaf hangs on an inner vertex
    if (0..n).any(|l| leaf_mask >> l & 1 == 1 && b.adj[l] & inner_mask == 0) {
        return Ok(None);
    }
    let inner_edges: Vec<(usize, usize)> = inner
        .iter()
        .flat_map(|&u| inner.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
        .filter(|&(u, w)| b.adj[u] >> w & 1 == 1)
        .collect();
    let mut s = TreeEnum {
        b: &b,
        inner: &inner,
        edges: &inner_edges,
        leaf_mask,
        chosen: Vec::new(),
        deg: vec![0; n],
        found: None,
    };
    s.search(0, &(0..n).collect::<Vec<_>>());
    let Some(tree) = s.found else {
        return Ok(None);
    };
    let out: BTreeSet<Edge> = tree
        .into_iter()
        .map(|(u, w)| Edge::new(b.ids[u], b.ids[w]))
        .collect();
    if !is_leaf_tree(g, &out, leaves) {
        return Err(Error::internal("oracle produced an invalid leaf tree"));
    }
    Ok(Some(out))
}

fn is_leaf_tree(g: &FiniteGraph, edges: &BTreeSet<Edge>, leaves: &BTreeSet<VertexId>) -> bool {
    let sub = FiniteGraph::from_parts(g.vertices(), edges.iter().map(|e| (e.lo(), e.hi())));
    let ones: BTreeSet<VertexId> = g
        .vertices()
        .filter(|&v| edges.iter().filter(|e| e.contains(v)).count() == 1)
        .collect();
    edges.len() + 1 == g.order()
        && edges.iter().all(|e| g.has_edge(e.lo(), e.hi()))
        && sub.is_ok_and(|s| components(&s).len() == 1)
        && &ones == leaves
}

struct TreeEnum<'a> {
    b: &'a Bits,
    inner: &'a [usize],
    edges: &'a [(usize, usize)],
    leaf_mask: u32,
    chosen: Vec<(usize, usize)>,
    deg: Vec<usize>,
    found: Option<Vec<(usize, usize)>>,
}

impl TreeEnum<'_> {
    /// Include-or-exclude over the inner edges. `comp` is a union-find parent
    /// array of the chosen forest.
    fn search(&mut self, at: usize, comp: &[usize]) {
        if self.found.is_some() {
            return;
        }
        let need = self.inner.len() - 1;
        if self.chosen.len() == need {
            if let Some(hang) = self.hang_leaves() {
                let mut t = self.chosen.clone();
                t.extend(hang);
                self.found = Some(t);
            }
            return;
        }
        if self.chosen.len() + (self.edges.len() - at) < need || !self.degrees_possible(at) {
            return;
        }
        let (u, w) = self.edges[at];
        let (ru, rw) = (root(comp, u), root(comp, w));
        if ru != rw {
            let mut next = comp.to_vec();
            next[ru] = rw;
            self.chosen.push((u, w));
            self.deg[u] += 1;
            self.deg[w] += 1;
            self.search(at + 1, &next);
            self.chosen.pop();
            self.deg[u] -= 1;
            self.deg[w] -= 1;
        }
        self.search(at + 1, comp);
    }

    /// An inner vertex with fewer than two leaf neighbours needs the rest of
    /// its degree from inner edges still available.
    fn degrees_possible(&self, at: usize) -> bool {
        self.inner.iter().all(|&x| {
            let leafy = (self.b.adj[x] & self.leaf_mask).count_ones() as usize;
            let left = self.edges[at..]
                .iter()
                .filter(|&&(u, w)| u == x || w == x)
                .count();
            self.deg[x] + left + leafy.min(2) >= 2
        })
    }

    /// Assigns every leaf to an inner neighbour so that each inner vertex
    /// reaches degree 2: slots for the deficits are matched first, the
    /// remaining leaves go to their smallest inner neighbour.
    fn hang_leaves(&self) -> Option<Vec<(usize, usize)>> {
        let slots: Vec<usize> = self
            .inner
            .iter()
            .flat_map(|&x| std::iter::repeat(x).take(2usize.saturating_sub(self.deg[x])))
            .collect();
        let leaves: Vec<usize> = (0..self.b.ids.len())
            .filter(|&l| self.leaf_mask >> l & 1 == 1)
            .collect();
        if slots.len() > leaves.len() {
            return None;
        }
        // owner[j] = slot matched to leaf j
        let mut owner: Vec<Option<usize>> = vec![None; leaves.len()];
        for s in 0..slots.len() {
            let mut seen = vec![false; leaves.len()];
            if !self.augment(s, &slots, &leaves, &mut owner, &mut seen) {
                return None;
            }
        }
        Some(
            leaves
                .iter()
                .enumerate()
                .map(|(j, &l)| {
                    let x = match owner[j] {
                        Some(s) => slots[s],
                        None => (self.b.adj[l] & !self.leaf_mask).trailing_zeros() as usize,
                    };
                    (l, x)
                })
                .collect(),
        )
    }

    fn augment(
        &self,
        s: usize,
        slots: &[usize],
        leaves: &[usize],
        owner: &mut Vec<Option<usize>>,
        seen: &mut Vec<bool>,
    ) -> bool {
        for j in 0..leaves.len() {
            if seen[j] || self.b.adj[slots[s]] >> leaves[j] & 1 == 0 {
                continue;
            }
            seen[j] = true;
            let free = match owner[j] {
                None => true,
                Some(t) => self.augment(t, slots, leaves, owner, seen),
            };
            if free {
                owner[j] = Some(s);
                return true;
            }
        }
        false
    }
}

fn root(comp: &[usize], mut v: usize) -> usize {
    while comp[v] != v {
        v = comp[v];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(u32, u32)]) -> FiniteGraph {
        FiniteGraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn cycle(n: u32) -> FiniteGraph {
        g(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn complete(n: u32) -> FiniteGraph {
        g(&(0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect::<Vec<_>>())
    }

    fn petersen() -> FiniteGraph {
        let mut e: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        g(&e)
    }

    #[test]
    fn cycles() {
        let c6 = cycle(6);
        assert_eq!(brute_hamilton_cycle(&c6).unwrap().unwrap(), c6.edge_set());
        let k23 = g(&[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(brute_hamilton_cycle(&k23).unwrap().is_none());
        assert!(brute_hamilton_cycle(&petersen()).unwrap().is_none());
        assert!(brute_hamilton_cycle(&complete(15)).is_err());
    }

    #[test]
    fn paths() {
        let p4 = g(&[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            brute_hamilton_path(&p4, Some((0, 3))).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        assert!(brute_hamilton_path(&p4, Some((0, 2))).unwrap().is_none());
        let star = g(&[(0, 1), (0, 2), (0, 3)]);
        assert!(brute_hamilton_path(&star, None).unwrap().is_none());
        // the petersen graph has Hamilton paths but no Hamilton cycle
        assert!(brute_hamilton_path(&petersen(), None).unwrap().is_some());
    }

    #[test]
    fn blown_up_p3_is_hamilton_connected_across_cliques() {
        // cliques {0,1}, {2,3}, {4,5}, consecutive ones joined completely
        let mut e = vec![(0, 1), (2, 3), (4, 5)];
        for (a, b) in [
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
        ] {
            e.push((a, b));
        }
        let bp3 = g(&e);
        for s in 0..6u32 {
            for t in 0..6u32 {
                if s / 2 != t / 2 {
                    assert!(
                        brute_hamilton_path(&bp3, Some((s, t))).unwrap().is_some(),
                        "{s} {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn leaf_trees() {
        let p4 = g(&[(0, 1), (1, 2), (2, 3)]);
        let set = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            brute_tree_with_leaves(&p4, &set(&[0, 3])).unwrap(),
            Some(p4.edge_set())
        );
        assert!(brute_tree_with_leaves(&p4, &set(&[0, 2]))
            .unwrap()
            .is_none());
        let k4 = complete(4);
        for a in 0..4 {
            for b in a + 1..4 {
                let t = brute_tree_with_leaves(&k4, &set(&[a, b])).unwrap().unwrap();
                assert_eq!(t.len(), 3);
            }
        }
        assert!(brute_tree_with_leaves(&cycle(4), &set(&[0, 1]))
            .unwrap()
            .is_some());
        assert!(brute_tree_with_leaves(&cycle(4), &set(&[0, 2]))
            .unwrap()
            .is_none());
        let star = g(&[(0, 1), (0, 2), (0, 3)]);
        assert!(brute_tree_with_leaves(&star, &set(&[1, 2, 3]))
            .unwrap()
            .is_some());
        assert!(brute_tree_with_leaves(&star, &set(&[1])).is_err());
    }
}
