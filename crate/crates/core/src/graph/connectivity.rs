use std::collections::{BTreeSet, VecDeque};

use super::{FiniteGraph, Separator, VertexId};
use crate::error::{Error, Result};

/// Connected components, each as a vertex set, ordered by smallest member.
pub fn components(g: &FiniteGraph) -> Vec<BTreeSet<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in g.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let comp: BTreeSet<_> = g.distances_from(&BTreeSet::from([v])).into_keys().collect();
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &FiniteGraph) -> bool {
    components(g).len() <= 1
}

/// `|V| > k` and no set of fewer than `k` vertices disconnects `g`.
///
/// Counts internally disjoint paths between every non-adjacent pair with a
/// unit-capacity flow on the split graph.
pub fn is_k_connected(g: &FiniteGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::input("connectivity k must be positive"));
    }
    let n = g.order();
    if n <= k {
        return Ok(false);
    }
    if !is_connected(g) {
        return Ok(false);
    }
    let d = g.dense();
    for s in 0..n {
        for t in s + 1..n {
            if !d.has(s, t) && local_connectivity(&d.adj, s, t, k) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of internally vertex-disjoint s–t paths, capped at `cap`.
fn local_connectivity(adj: &[Vec<usize>], s: usize, t: usize, cap: usize) -> usize {
    // split node x into x_in = 2x, x_out = 2x+1; capacity 1 on x_in -> x_out
    let n = adj.len();
    let mut cap_m = std::collections::HashMap::<(usize, usize), i32>::new();
    let mut nbrs = vec![Vec::new(); 2 * n];
    let mut add = |u: usize, v: usize, c: i32, nbrs: &mut Vec<Vec<usize>>| {
        *cap_m.entry((u, v)).or_insert(0) += c;
        cap_m.entry((v, u)).or_insert(0);
        nbrs[u].push(v);
        nbrs[v].push(u);
    };
    for x in 0..n {
        let c = if x == s || x == t { n as i32 } else { 1 };
        add(2 * x, 2 * x + 1, c, &mut nbrs);
        for &y in &adj[x] {
            add(2 * x + 1, 2 * y, 1, &mut nbrs);
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[src] = src;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            if u == dst {
                break;
            }
            for &v in &nbrs[u] {
                if prev[v] == usize::MAX && cap_m[&(u, v)] > 0 {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        if prev[dst] == usize::MAX {
            break;
        }
        let mut v = dst;
        while v != src {
            let u = prev[v];
            *cap_m.get_mut(&(u, v)).unwrap() -= 1;
            *cap_m.get_mut(&(v, u)).unwrap() += 1;
            v = u;
        }
        flow += 1;
    }
    flow
}

/// All inclusion-minimal vertex separators of size at most `size_cap`,
/// sorted lexicographically by their sorted vertex lists.
///
/// Generation follows the close-separator closure: start from `N(C)` for the
/// components `C` of `G - N[v]`, then for every separator `S` and `x ∈ S`
/// add `N(C)` for the components of `G - (S ∪ N(x))`. Every candidate is
/// re-checked for minimality by single-vertex removal.
pub fn minimal_separators(g: &FiniteGraph, size_cap: usize) -> Result<Vec<Separator>> {
    if !is_connected(g) {
        return Err(Error::input(
            "minimal separators requested on a disconnected graph",
        ));
    }
    let mut found: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<VertexId>> = VecDeque::new();
    let push = |s: BTreeSet<VertexId>, found: &mut BTreeSet<Vec<VertexId>>, q: &mut VecDeque<_>| {
        if !s.is_empty() && found.insert(s.iter().copied().collect()) {
            q.push_back(s);
        }
    };

    for v in g.vertices() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        for c in components(&g.without(&closed)) {
            push(neighborhood(g, &c), &mut found, &mut queue);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &x in &s {
            let mut removed = s.clone();
            removed.extend(g.neighbors(x).iter().copied());
            for c in components(&g.without(&removed)) {
                push(neighborhood(g, &c), &mut found, &mut queue);
            }
        }
    }

    Ok(found
        .into_iter()
        .filter(|s| s.len() <= size_cap)
        .filter(|s| is_minimal_separator(g, s))
        .map(|vertices| Separator {
            vertices,
            minimal: true,
        })
        .collect())
}

fn neighborhood(g: &FiniteGraph, c: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    c.iter()
        .flat_map(|&u| g.neighbors(u).iter().copied())
        .filter(|w| !c.contains(w))
        .collect()
}

fn separates(g: &FiniteGraph, s: &BTreeSet<VertexId>) -> bool {
    components(&g.without(s)).len() >= 2
}

pub(crate) fn is_minimal_separator(g: &FiniteGraph, s: &[VertexId]) -> bool {
    let set: BTreeSet<_> = s.iter().copied().collect();
    separates(g, &set)
        && s.iter().all(|v| {
            let mut smaller = set.clone();
            smaller.remove(v);
            !separates(g, &smaller)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> FiniteGraph {
        FiniteGraph::from_edges((0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: u32) -> FiniteGraph {
        FiniteGraph::from_edges((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Exhaustive oracle: every vertex subset up to the cap.
    fn brute_minimal_separators(g: &FiniteGraph, cap: usize) -> Vec<Vec<VertexId>> {
        let vs: Vec<_> = g.vertices().collect();
        let mut out = Vec::new();
        for mask in 1u32..(1 << vs.len()) {
            if mask.count_ones() as usize > cap {
                continue;
            }
            let s: Vec<_> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i])
                .collect();
            if is_minimal_separator(g, &s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn components_examples() {
        let p = FiniteGraph::from_edges([(0, 1), (1, 2)]).unwrap();
        assert_eq!(components(&p).len(), 1);
        let two = FiniteGraph::from_edges([(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            components(&two),
            vec![BTreeSet::from([0, 1]), BTreeSet::from([2, 3])]
        );
        let claw = FiniteGraph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaves = claw.without_vertex(0);
        assert_eq!(components(&leaves).len(), 3);
    }

    #[test]
    fn k_connectivity_examples() {
        assert!(is_k_connected(&cycle(4), 2).unwrap());
        let p4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_k_connected(&p4, 2).unwrap());
        let k4e = FiniteGraph::from_edges([(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!is_k_connected(&k4e, 3).unwrap());
        assert!(is_k_connected(&k4e, 2).unwrap());
        assert!(is_k_connected(&complete(5), 4).unwrap());
        assert!(!is_k_connected(&complete(4), 4).unwrap());
        assert!(is_k_connected(&cycle(4), 0).is_err());
    }

    #[test]
    fn separator_examples() {
        let p4 = FiniteGraph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        let got: Vec<_> = minimal_separators(&p4, 4)
            .unwrap()
            .into_iter()
            .map(|s| s.vertices)
            .collect();
        assert_eq!(got, vec![vec![1], vec![2]]);
        let got: Vec<_> = minimal_separators(&cycle(4), 4)
            .unwrap()
            .into_iter()
            .map(|s| s.vertices)
            .collect();
        assert_eq!(got, vec![vec![0, 2], vec![1, 3]]);
        assert!(minimal_separators(&complete(4), 4).unwrap().is_empty());
        let two = FiniteGraph::from_edges([(0, 1), (2, 3)]).unwrap();
        assert!(minimal_separators(&two, 2).is_err());
    }

    #[test]
    fn separators_match_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 150 {
            let n = rng.gen_range(3..9u32);
            let p = rng.gen_range(0.25..0.8);
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = FiniteGraph::from_parts(0..n, edges).unwrap();
            if !is_connected(&g) {
                continue;
            }
            let cap = rng.gen_range(1..n as usize);
            let got: Vec<_> = minimal_separators(&g, cap)
                .unwrap()
                .into_iter()
                .map(|s| s.vertices)
                .collect();
            assert_eq!(
                got,
                brute_minimal_separators(&g, cap),
                "graph {:?}",
                g.edge_set()
            );
            // flow and separator views of connectivity agree
            for k in 1..4 {
                let by_sep = g.order() > k
                    && brute_minimal_separators(&g, g.order())
                        .iter()
                        .all(|s| s.len() >= k);
                assert_eq!(is_k_connected(&g, k).unwrap(), by_sep);
            }
            checked += 1;
        }
    }
}
