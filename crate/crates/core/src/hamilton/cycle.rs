//! Cycle and path bookkeeping shared by the constructions and verifiers.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{components, Edge, FiniteGraph, VertexId};

pub type EdgeSet = BTreeSet<Edge>;

pub fn edges_of_cycle(order: &[VertexId]) -> EdgeSet {
    let n = order.len();
    (0..n)
        .map(|i| Edge::new(order[i], order[(i + 1) % n]))
        .collect()
}

pub fn edges_of_path(order: &[VertexId]) -> EdgeSet {
    order.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
}

pub(crate) fn degrees(edges: &EdgeSet) -> BTreeMap<VertexId, usize> {
    let mut deg = BTreeMap::new();
    for e in edges {
        *deg.entry(e.lo()).or_insert(0) += 1;
        *deg.entry(e.hi()).or_insert(0) += 1;
    }
    deg
}

/// `edges` is one cycle through every vertex of `g`, using only edges of `g`.
pub fn is_hamilton_cycle(g: &FiniteGraph, edges: &EdgeSet) -> bool {
    if g.order() < 3 || edges.len() != g.order() {
        return false;
    }
    if !edges.iter().all(|e| g.has_edge(e.lo(), e.hi())) {
        return false;
    }
    let deg = degrees(edges);
    if g.vertices().any(|v| deg.get(&v) != Some(&2)) {
        return false;
    }
    let h = FiniteGraph::from_parts(g.vertices(), edges.iter().map(|e| (e.lo(), e.hi())));
    h.map_or(false, |h| components(&h).len() == 1)
}

/// `order` visits every vertex of `g` once along edges of `g`.
pub fn is_hamilton_path(g: &FiniteGraph, order: &[VertexId]) -> bool {
    order.len() == g.order()
        && order.iter().copied().collect::<BTreeSet<_>>() == g.vertex_set()
        && order.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Walks a cycle given by its edge set, starting at `start` and heading to
/// its smaller neighbour first.
pub fn cycle_order(edges: &EdgeSet, start: VertexId) -> Result<Vec<VertexId>> {
    let mut nbrs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        nbrs.entry(e.lo()).or_default().push(e.hi());
        nbrs.entry(e.hi()).or_default().push(e.lo());
    }
    if nbrs.values().any(|ns| ns.len() != 2) {
        return Err(Error::internal("edge set is not 2-regular"));
    }
    let first = nbrs
        .get(&start)
        .ok_or_else(|| Error::internal(format!("{start} not on the cycle")))?;
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, *first.iter().min().unwrap());
    while cur != start {
        order.push(cur);
        let ns = &nbrs[&cur];
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    if order.len() != nbrs.len() {
        return Err(Error::internal("edge set is not a single cycle"));
    }
    Ok(order)
}

/// Number of edges with exactly one endpoint in `side`.
pub fn crossing_count(edges: &EdgeSet, side: &BTreeSet<VertexId>) -> usize {
    edges
        .iter()
        .filter(|e| side.contains(&e.lo()) != side.contains(&e.hi()))
        .count()
}

/// Clique path `first, middle…, last` with the middle in increasing order.
pub(crate) fn clique_path(
    first: VertexId,
    last: VertexId,
    class: &BTreeSet<VertexId>,
) -> Vec<VertexId> {
    let mut p = vec![first];
    p.extend(class.iter().copied().filter(|&x| x != first && x != last));
    if last != first {
        p.push(last);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_helpers() {
        let c5 = FiniteGraph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let e = edges_of_cycle(&[0, 1, 2, 3, 4]);
        assert!(is_hamilton_cycle(&c5, &e));
        assert_eq!(cycle_order(&e, 2).unwrap(), vec![2, 1, 0, 4, 3]);
        assert_eq!(crossing_count(&e, &BTreeSet::from([0, 1])), 2);
        let mut broken = e.clone();
        broken.remove(&Edge::new(0, 1));
        assert!(!is_hamilton_cycle(&c5, &broken));
        assert!(is_hamilton_path(&c5, &[3, 4, 0, 1, 2]));
        assert!(!is_hamilton_path(&c5, &[3, 0, 4, 1, 2]));
    }

    #[test]
    fn two_triangles_are_not_one_cycle() {
        let e = edges_of_cycle(&[0, 1, 2])
            .union(&edges_of_cycle(&[3, 4, 5]))
            .copied()
            .collect();
        assert!(cycle_order(&e, 0).is_err());
    }
}
