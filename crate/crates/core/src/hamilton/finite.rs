use crate::detect::{find_induced, Pattern};
use crate::error::{Error, Result};
use crate::graph::{is_k_connected, Dense, FiniteGraph};

use super::cycle::{edges_of_cycle, is_hamilton_cycle, EdgeSet};

/// Node budget for the backtracking search; far above what any 2-connected
/// claw-free net-free input of window size needs.
const SEARCH_BUDGET: u64 = 50_000_000;

/// A Hamilton cycle of a finite 2-connected claw-free net-free graph.
pub fn finite_hamilton_cycle(g: &FiniteGraph) -> Result<EdgeSet> {
    if !is_k_connected(g, 2)? {
        return Err(Error::precondition("graph is not 2-connected"));
    }
    if let Some(m) = find_induced(g, Pattern::Claw) {
        return Err(Error::precondition(format!(
            "graph contains an induced {m}"
        )));
    }
    if let Some(m) = find_induced(g, Pattern::Net) {
        return Err(Error::precondition(format!(
            "graph contains an induced {m}"
        )));
    }
    let order = search_cycle(g, SEARCH_BUDGET)?.ok_or_else(|| {
        Error::internal("no Hamilton cycle in a 2-connected claw-free net-free graph")
    })?;
    let edges = edges_of_cycle(&order);
    if !is_hamilton_cycle(g, &edges) {
        return Err(Error::internal("search returned an invalid cycle"));
    }
    Ok(edges)
}

/// Depth-first extension of a path from the smallest vertex, neighbours with
/// the fewest free neighbours first, pruning on stranded vertices.
pub(crate) fn search_cycle(g: &FiniteGraph, budget: u64) -> Result<Option<Vec<u32>>> {
    let d = g.dense();
    let n = d.len();
    if n < 3 {
        return Ok(None);
    }
    let mut s = CycleSearch {
        d: &d,
        used: vec![false; n],
        free_deg: (0..n).map(|i| d.adj[i].len()).collect(),
        path: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    s.visit(0);
    let found = s.extend()?;
    Ok(found.then(|| s.path.iter().map(|&i| d.ids[i]).collect()))
}

struct CycleSearch<'a> {
    d: &'a Dense,
    used: Vec<bool>,
    /// Unused neighbours per vertex.
    free_deg: Vec<usize>,
    path: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CycleSearch<'_> {
    fn visit(&mut self, x: usize) {
        self.used[x] = true;
        self.path.push(x);
        for &y in &self.d.adj[x] {
            self.free_deg[y] -= 1;
        }
    }

    fn unvisit(&mut self) {
        let x = self.path.pop().unwrap();
        self.used[x] = false;
        for &y in &self.d.adj[x] {
            self.free_deg[y] += 1;
        }
    }

    fn extend(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted(format!(
                "Hamilton cycle search passed {} nodes",
                self.budget
            )));
        }
        let n = self.d.len();
        let cur = *self.path.last().unwrap();
        let start = self.path[0];
        if self.path.len() == n {
            return Ok(self.d.has(cur, start));
        }
        // an unused vertex needs two ways in, counting the path ends
        for y in 0..n {
            if !self.used[y] {
                let ends = self.d.has(y, cur) as usize + self.d.has(y, start) as usize;
                if self.free_deg[y] + ends < 2 {
                    return Ok(false);
                }
            }
        }
        let mut next: Vec<usize> = self.d.adj[cur]
            .iter()
            .copied()
            .filter(|&y| !self.used[y])
            .collect();
        next.sort_by_key(|&y| (self.free_deg[y], y));
        for y in next {
            self.visit(y);
            if self.extend()? {
                return Ok(true);
            }
            self.unvisit();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> FiniteGraph {
        FiniteGraph::from_edges((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn cycles_and_cliques() {
        let c5 = FiniteGraph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(finite_hamilton_cycle(&c5).unwrap(), c5.edge_set());
        let k4 = complete(4);
        assert!(is_hamilton_cycle(&k4, &finite_hamilton_cycle(&k4).unwrap()));
    }

    #[test]
    fn blown_up_path() {
        // cliques {0,1}, {2,3}, {4,5}, consecutive cliques complete to each other
        let mut g = FiniteGraph::new();
        for c in 0..3u32 {
            g.add_edge(2 * c, 2 * c + 1);
            for a in 0..2 {
                for b in 0..2 {
                    if c > 0 {
                        g.add_edge(2 * (c - 1) + a, 2 * c + b);
                    }
                }
            }
        }
        assert!(is_hamilton_cycle(&g, &finite_hamilton_cycle(&g).unwrap()));
    }

    #[test]
    fn preconditions_are_named() {
        let p4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(
            matches!(finite_hamilton_cycle(&p4), Err(Error::Precondition(m)) if m.contains("2-connected"))
        );
        // K_{1,3} plus edges making it 2-connected keeps the claw at 0
        let k23 =
            FiniteGraph::from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(
            matches!(finite_hamilton_cycle(&k23), Err(Error::Precondition(m)) if m.contains("claw"))
        );
    }

    #[test]
    fn search_rejects_petersen() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let p = FiniteGraph::from_edges(outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(search_cycle(&p, SEARCH_BUDGET).unwrap(), None);
    }
}
