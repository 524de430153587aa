use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::LazyGraph;
use crate::error::{Error, Result};
use crate::graph::{components, FiniteGraph, VertexId};

/// The finite truncation of a lazy graph on the radius-`depth` ball around
/// its root.
#[derive(Debug, Clone)]
pub struct Window {
    pub depth: usize,
    pub graph: FiniteGraph,
    /// `classes[i]` = vertices at distance exactly `i` from the root.
    pub classes: Vec<BTreeSet<VertexId>>,
    /// The outermost class (empty if the graph is finite and shallower).
    pub boundary: BTreeSet<VertexId>,
    /// Boundary vertices that have neighbours outside the window.
    pub open_boundary: BTreeSet<VertexId>,
}

impl Window {
    pub fn distance(&self, v: VertexId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    /// Vertices within distance `r` of the root.
    pub fn ball(&self, r: usize) -> BTreeSet<VertexId> {
        self.classes.iter().take(r + 1).flatten().copied().collect()
    }
}

/// Caching neighbour lookups with a symmetry check on every listed pair.
pub(crate) struct Explorer<'a> {
    g: &'a LazyGraph,
    cache: HashMap<VertexId, Vec<VertexId>>,
}

impl<'a> Explorer<'a> {
    pub fn new(g: &'a LazyGraph) -> Self {
        Explorer {
            g,
            cache: HashMap::new(),
        }
    }

    fn raw(&mut self, v: VertexId) -> Result<&Vec<VertexId>> {
        if !self.cache.contains_key(&v) {
            let ns = self.g.neighbors(v)?;
            self.cache.insert(v, ns);
        }
        Ok(&self.cache[&v])
    }

    /// Neighbours of `v`, after confirming each of them lists `v` back.
    pub fn neighbors(&mut self, v: VertexId) -> Result<Vec<VertexId>> {
        let ns = self.raw(v)?.clone();
        for &w in &ns {
            if self.raw(w)?.binary_search(&v).is_err() {
                return Err(Error::Asymmetric(v, w));
            }
        }
        Ok(ns)
    }

    /// Breadth-first distances from `sources` in `G - excluded`, up to `radius`.
    pub fn distances(
        &mut self,
        sources: &BTreeSet<VertexId>,
        radius: usize,
        excluded: &BTreeSet<VertexId>,
    ) -> Result<BTreeMap<VertexId, usize>> {
        let mut dist: BTreeMap<VertexId, usize> = sources.iter().map(|&s| (s, 0)).collect();
        let mut frontier: Vec<VertexId> = sources.iter().copied().collect();
        for d in 1..=radius {
            let mut next = BTreeSet::new();
            for &u in &frontier {
                for w in self.neighbors(u)? {
                    if !excluded.contains(&w) && !dist.contains_key(&w) {
                        next.insert(w);
                    }
                }
            }
            for &w in &next {
                dist.insert(w, d);
            }
            frontier = next.into_iter().collect();
            if frontier.is_empty() {
                break;
            }
        }
        Ok(dist)
    }

    /// The subgraph of `G` induced on `xs`.
    pub fn induced(&mut self, xs: &BTreeSet<VertexId>) -> Result<FiniteGraph> {
        let mut edges = Vec::new();
        for &u in xs {
            for w in self.neighbors(u)? {
                if u < w && xs.contains(&w) {
                    edges.push((u, w));
                }
            }
        }
        FiniteGraph::from_parts(xs.iter().copied(), edges)
    }
}

pub fn window(g: &LazyGraph, depth: usize) -> Result<Window> {
    let mut ex = Explorer::new(g);
    let dist = ex.distances(&BTreeSet::from([g.root]), depth, &BTreeSet::new())?;
    let verts: BTreeSet<_> = dist.keys().copied().collect();
    let graph = ex.induced(&verts)?;
    let classes = crate::graph::classes_from_distances(&dist);
    let boundary = if classes.len() == depth + 1 {
        classes[depth].clone()
    } else {
        BTreeSet::new()
    };
    let mut open_boundary = BTreeSet::new();
    for &b in &boundary {
        if ex.neighbors(b)?.iter().any(|w| !verts.contains(w)) {
            open_boundary.insert(b);
        }
    }
    Ok(Window {
        depth,
        graph,
        classes,
        boundary,
        open_boundary,
    })
}

/// Components of `window(2·depth)` minus the radius-`depth` ball that reach
/// the outer boundary.
pub fn end_count_empirical(g: &LazyGraph, depth: usize) -> Result<usize> {
    if depth == 0 {
        return Err(Error::input("end count needs depth >= 1"));
    }
    let w = window(g, 2 * depth)?;
    let outer = w.graph.without(&w.ball(depth));
    Ok(components(&outer)
        .iter()
        .filter(|c| c.iter().any(|v| w.boundary.contains(v)))
        .count())
}

/// A path `r_0 … r_depth` with `r_i` at distance exactly `i` from `x`.
///
/// Levels are processed outward; at each one the smallest-id vertex that can
/// still reach level `depth` by a level-increasing path is taken.
pub fn distance_increasing_ray(
    g: &LazyGraph,
    x: &BTreeSet<VertexId>,
    depth: usize,
) -> Result<Vec<VertexId>> {
    if x.is_empty() {
        return Err(Error::input(
            "distance-increasing ray needs a non-empty start set",
        ));
    }
    if depth == 0 {
        return Err(Error::input("depth must be positive"));
    }
    let mut ex = Explorer::new(g);
    let dist = ex.distances(x, depth, &BTreeSet::new())?;
    let levels = crate::graph::classes_from_distances(&dist);
    if levels.len() <= depth {
        return Err(Error::SearchExhausted(format!(
            "no vertex at distance {depth} from the start set"
        )));
    }
    // extendable[i]: level-i vertices with a level-increasing path to level `depth`
    let mut extendable = vec![BTreeSet::new(); depth + 1];
    extendable[depth] = levels[depth].clone();
    for i in (0..depth).rev() {
        for &u in &levels[i] {
            if ex
                .neighbors(u)?
                .iter()
                .any(|w| extendable[i + 1].contains(w))
            {
                extendable[i].insert(u);
            }
        }
    }
    let mut ray = vec![*extendable[0]
        .first()
        .ok_or_else(|| Error::internal("empty level 0"))?];
    for i in 1..=depth {
        let last = *ray.last().unwrap();
        let ns = ex.neighbors(last)?;
        let next = *extendable[i]
            .iter()
            .find(|w| ns.binary_search(w).is_ok())
            .ok_or_else(|| Error::internal("extendable chain broke"))?;
        ray.push(next);
    }
    Ok(ray)
}

/// A geodetic path `v_{-depth} … v_0 … v_depth` of length `2·depth` whose two
/// tails lie in distinct unbounded components outside the radius-`(depth-1)`
/// ball. Returned from the `v_{-depth}` side.
pub fn geodetic_double_ray(g: &LazyGraph, depth: usize) -> Result<Vec<VertexId>> {
    if g.declared_ends != 2 {
        return Err(Error::precondition(
            "geodetic double ray needs a two-ended graph",
        ));
    }
    if depth == 0 {
        return Err(Error::input("depth must be positive"));
    }
    let w = window(g, 2 * depth)?;
    let outside = w.graph.without(&w.ball(depth - 1));
    let unbounded: Vec<BTreeSet<VertexId>> = components(&outside)
        .into_iter()
        .filter(|c| c.iter().any(|v| w.boundary.contains(v)))
        .collect();
    if unbounded.len() < 2 {
        return Err(Error::SearchExhausted(format!(
            "fewer than two unbounded components beyond radius {}",
            depth - 1
        )));
    }
    let sphere = &w.classes[depth];
    for (i, a) in unbounded.iter().enumerate() {
        for b in &unbounded[i + 1..] {
            for &x in a.intersection(sphere) {
                let dist = w.graph.distances_from(&BTreeSet::from([x]));
                for &y in b.intersection(sphere) {
                    if dist.get(&y) == Some(&(2 * depth)) {
                        return w
                            .graph
                            .shortest_path(x, y)
                            .ok_or_else(|| Error::internal("distance without path"));
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no geodetic double ray of radius {depth} in the window"
    )))
}
