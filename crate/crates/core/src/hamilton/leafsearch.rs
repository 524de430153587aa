//! Exact search for a spanning tree whose leaves are exactly a given set.
//!
//! Such a tree is a path between the first two leaves plus, for every
//! further leaf, a branch from an earlier non-leaf tree vertex out to that
//! leaf. The search grows these paths one vertex at a time and prunes when
//! the unused vertices fall into more pieces than the remaining branches can
//! reach.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Dense, Edge, FiniteGraph, VertexId};

pub(crate) struct LeafSearch<'a> {
    d: &'a Dense,
    leaves: Vec<usize>,
    is_leaf: Vec<bool>,
    /// Vertices that may not become branch points (degree at most 2).
    no_branch: Vec<bool>,
    used: Vec<bool>,
    deg: Vec<usize>,
    edges: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

/// `Ok(None)` means no such tree exists; running out of budget is an error.
pub(crate) fn tree_with_leaves(
    g: &FiniteGraph,
    leaves: &BTreeSet<VertexId>,
    no_branch: &BTreeSet<VertexId>,
    budget: u64,
) -> Result<Option<BTreeSet<Edge>>> {
    let d = g.dense();
    let n = d.len();
    if leaves.len() < 2 {
        return Err(Error::input(
            "a prescribed leaf set needs at least two vertices",
        ));
    }
    let idx = |v: &VertexId| {
        d.index_of(*v)
            .ok_or_else(|| Error::input(format!("leaf {v} is not in the graph")))
    };
    let leaf_idx: Vec<usize> = leaves.iter().map(idx).collect::<Result<_>>()?;
    if n == 2 {
        return Ok(d
            .has(0, 1)
            .then(|| BTreeSet::from([Edge::new(d.ids[0], d.ids[1])])));
    }
    let mut is_leaf = vec![false; n];
    for &l in &leaf_idx {
        is_leaf[l] = true;
    }
    let mut nb = vec![false; n];
    for v in no_branch {
        if let Some(i) = d.index_of(*v) {
            nb[i] = true;
        }
    }
    let mut s = LeafSearch {
        d: &d,
        leaves: leaf_idx,
        is_leaf,
        no_branch: nb,
        used: vec![false; n],
        deg: vec![0; n],
        edges: Vec::new(),
        nodes: 0,
        budget,
    };
    let first = s.leaves[0];
    s.used[first] = true;
    if s.grow(first, 1)? {
        let edges = s
            .edges
            .iter()
            .map(|&(a, b)| Edge::new(d.ids[a], d.ids[b]))
            .collect();
        return Ok(Some(edges));
    }
    Ok(None)
}

impl LeafSearch<'_> {
    fn add(&mut self, a: usize, b: usize) {
        self.used[b] = true;
        self.deg[a] += 1;
        self.deg[b] += 1;
        self.edges.push((a, b));
    }

    fn remove(&mut self) {
        let (a, b) = self.edges.pop().unwrap();
        self.used[b] = false;
        self.deg[a] -= 1;
        self.deg[b] -= 1;
    }

    /// Unused non-leaf vertices split into few enough pieces, and every piece
    /// and every pending leaf touches something usable.
    fn feasible(&self, cur: usize, target_idx: usize) -> bool {
        let n = self.d.len();
        let mut seen = vec![false; n];
        let mut pieces = 0;
        for s in 0..n {
            if self.used[s] || self.is_leaf[s] || seen[s] {
                continue;
            }
            pieces += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.d.adj[u] {
                    if !self.used[w] && !self.is_leaf[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        let branches_left = self.leaves.len() - target_idx;
        if pieces > branches_left {
            return false;
        }
        let target = self.leaves[target_idx];
        if branches_left == 1 {
            // the rest is a Hamilton path from `cur` to the target, so every
            // unused vertex needs two ways in or out
            let open = |w: usize| !self.used[w] || w == cur;
            let stuck = (0..n).any(|u| {
                !self.used[u]
                    && u != target
                    && self.d.adj[u].iter().filter(|&&w| open(w)).count() < 2
            });
            if stuck || !self.path_shaped(cur, target) {
                return false;
            }
        }
        // the current target must be reachable from `cur` through unused vertices
        if self.d.has(cur, target) {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![cur];
        seen[cur] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.d.adj[u] {
                if w == target {
                    return true;
                }
                if !self.used[w] && !self.is_leaf[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// No single unused vertex cuts off a piece holding neither `cur` nor
    /// `target`; a Hamilton path between them could not visit that piece.
    fn path_shaped(&self, cur: usize, target: usize) -> bool {
        let n = self.d.len();
        let live: Vec<usize> = (0..n).filter(|&u| !self.used[u] || u == cur).collect();
        for &x in &live {
            if x == cur || x == target {
                continue;
            }
            let mut seen = vec![false; n];
            seen[x] = true;
            let mut stack = vec![cur, target];
            seen[cur] = true;
            seen[target] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.d.adj[u] {
                    if !seen[w] && !self.used[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if live.iter().any(|&u| !seen[u]) {
                return false;
            }
        }
        true
    }

    /// Extends the branch ending at `cur` towards leaf number `target_idx`.
    fn grow(&mut self, cur: usize, target_idx: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted(format!(
                "leaf-tree search passed {} nodes",
                self.budget
            )));
        }
        if !self.feasible(cur, target_idx) {
            return Ok(false);
        }
        let target = self.leaves[target_idx];
        let last_branch = target_idx + 1 == self.leaves.len();
        // the final branch may only close once nothing else is left
        let may_close = !last_branch || self.used.iter().filter(|&&u| !u).count() == 1;
        // two adjacent leaves joined directly would cut themselves off
        let isolated_pair = self.is_leaf[cur] && target_idx == 1 && self.d.len() > 2;
        if may_close && !isolated_pair && self.d.has(cur, target) {
            self.add(cur, target);
            let done = if last_branch {
                self.used.iter().all(|&u| u)
            } else {
                self.start_branch(target_idx + 1)?
            };
            if done {
                return Ok(true);
            }
            self.remove();
        }
        let mut next: Vec<usize> = self.d.adj[cur]
            .iter()
            .copied()
            .filter(|&w| !self.used[w] && !self.is_leaf[w])
            .collect();
        let free = |w: usize| self.d.adj[w].iter().filter(|&&x| !self.used[x]).count();
        next.sort_by_key(|&w| (free(w), w));
        for w in next {
            self.add(cur, w);
            if self.grow(w, target_idx)? {
                return Ok(true);
            }
            self.remove();
        }
        Ok(false)
    }

    /// Starts the branch to leaf `target_idx` at some existing tree vertex.
    fn start_branch(&mut self, target_idx: usize) -> Result<bool> {
        let n = self.d.len();
        for p in 0..n {
            if !self.used[p] || self.is_leaf[p] || (self.no_branch[p] && self.deg[p] >= 2) {
                continue;
            }
            if self.grow(p, target_idx)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    fn leaves_of(edges: &BTreeSet<Edge>) -> BTreeSet<u32> {
        let mut deg = std::collections::BTreeMap::new();
        for e in edges {
            *deg.entry(e.lo()).or_insert(0) += 1;
            *deg.entry(e.hi()).or_insert(0) += 1;
        }
        deg.into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    #[test]
    fn hamilton_paths_and_spiders() {
        let k5 =
            FiniteGraph::from_edges((0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
        let t = tree_with_leaves(&k5, &set(&[1, 3]), &BTreeSet::new(), 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(leaves_of(&t), set(&[1, 3]));
        let t = tree_with_leaves(&k5, &set(&[0, 2, 4]), &BTreeSet::new(), 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(leaves_of(&t), set(&[0, 2, 4]));
    }

    #[test]
    fn impossible_sets_are_refuted() {
        let p4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(
            tree_with_leaves(&p4, &set(&[0, 2]), &BTreeSet::new(), 1 << 20)
                .unwrap()
                .is_none()
        );
        assert!(
            tree_with_leaves(&p4, &set(&[0, 3]), &BTreeSet::new(), 1 << 20)
                .unwrap()
                .is_some()
        );
        // a star can only have its three leaves
        let star = FiniteGraph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(
            tree_with_leaves(&star, &set(&[1, 2]), &BTreeSet::new(), 1 << 20)
                .unwrap()
                .is_none()
        );
        assert!(
            tree_with_leaves(&star, &set(&[1, 2, 3]), &BTreeSet::new(), 1 << 20)
                .unwrap()
                .is_some()
        );
        assert!(
            tree_with_leaves(&star, &set(&[1, 2, 3]), &set(&[0]), 1 << 20)
                .unwrap()
                .is_none()
        );
    }
}
