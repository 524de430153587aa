//! The window hierarchy `G_n` used by the constructions.
//!
//! A minimal separator `S` and a center `v ∈ S` are fixed. Outside the
//! excluded set `S - v` (plus any extra vertices), breadth-first layers
//! from `v` split into two sides `L` and `R`, the components of what remains
//! once `v` is removed. `G_n` is the subgraph induced by the excluded set,
//! `v`, and the layers `1..=n` of both sides.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::{window, Explorer, LazyGraph};
use crate::graph::{components, minimal_separators, FiniteGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::L => "L",
            Side::R => "R",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "L" => Some(Side::L),
            "R" => Some(Side::R),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How to pick among the admissible separators near the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorPolicy {
    /// Lexicographically smallest vertex list.
    Lexicographic,
    /// Smallest size, then lexicographic.
    SmallestFirst,
}

/// A minimal separator of a root window that splits the window into two
/// pieces: for two-ended graphs both reach the window boundary, for
/// one-ended graphs exactly one does.
pub fn choose_separator(g: &LazyGraph, policy: SeparatorPolicy) -> Result<Vec<VertexId>> {
    if !matches!(g.declared_ends, 1 | 2) {
        return Err(Error::precondition(
            "separator choice needs a one- or two-ended graph",
        ));
    }
    for p in 4..=8usize {
        let w = window(g, p)?;
        let cap = w.graph.max_degree() + 1;
        let mut admissible: Vec<Vec<VertexId>> = minimal_separators(&w.graph, cap)?
            .into_iter()
            .map(|s| s.vertices)
            .filter(|s| s.iter().all(|v| w.distance(*v).is_some_and(|d| d + 2 <= p)))
            .filter(|s| {
                let comps = components(&w.graph.without(&s.iter().copied().collect()));
                let open = comps
                    .iter()
                    .filter(|c| c.iter().any(|v| w.boundary.contains(v)))
                    .count();
                comps.len() == 2 && open == g.declared_ends as usize
            })
            .collect();
        if policy == SeparatorPolicy::SmallestFirst {
            admissible.sort_by_key(|s| s.len());
        }
        if let Some(s) = admissible.into_iter().next() {
            return Ok(s);
        }
    }
    Err(Error::structure(
        "no separator near the root splits the graph into two sides",
    ))
}

#[derive(Debug, Clone)]
pub struct Layering {
    pub separator: Vec<VertexId>,
    pub center: VertexId,
    /// `S - v` plus any extra removed vertices.
    pub excluded: BTreeSet<VertexId>,
    /// `right[i]` is `R_i`; index 0 is unused and empty. One class beyond
    /// `depth` is kept as lookahead.
    pub right: Vec<BTreeSet<VertexId>>,
    pub left: Vec<BTreeSet<VertexId>>,
    pub depth: usize,
    /// Largest layer index holding a neighbour of an excluded vertex.
    pub ell: usize,
    full: FiniteGraph,
}

impl Layering {
    pub fn build(
        g: &LazyGraph,
        separator: &[VertexId],
        center: VertexId,
        extra_excluded: &[VertexId],
        depth: usize,
    ) -> Result<Layering> {
        if !separator.contains(&center) {
            return Err(Error::input(format!(
                "center {center} is not in the separator"
            )));
        }
        let mut excluded: BTreeSet<VertexId> =
            separator.iter().copied().filter(|&x| x != center).collect();
        excluded.extend(extra_excluded.iter().copied());
        let mut ex = Explorer::new(g);
        let dist = ex.distances(&BTreeSet::from([center]), depth + 1, &excluded)?;
        let layered: BTreeSet<VertexId> = dist.keys().copied().filter(|&x| x != center).collect();
        let sides = components(&ex.induced(&layered)?);
        if sides.len() != 2 {
            return Err(Error::structure(format!(
                "removing the separator leaves {} components around the center, not 2",
                sides.len()
            )));
        }
        let reach = |c: &BTreeSet<VertexId>| c.iter().map(|v| dist[v]).max().unwrap_or(0);
        // R is the deeper side; on a tie, the side holding the smallest id
        let r_first = reach(&sides[0]) >= reach(&sides[1]);
        let (r_side, l_side) = if r_first {
            (&sides[0], &sides[1])
        } else {
            (&sides[1], &sides[0])
        };
        let classes = |side: &BTreeSet<VertexId>| {
            let mut out = vec![BTreeSet::new(); depth + 2];
            for &x in side {
                out[dist[&x]].insert(x);
            }
            out
        };
        let right = classes(r_side);
        let left = classes(l_side);

        let mut all = layered.clone();
        all.insert(center);
        all.extend(excluded.iter().copied());
        let full = ex.induced(&all)?;
        let mut ell = 0;
        for &x in &excluded {
            for w in full.neighbors(x) {
                if let Some(&d) = dist.get(w) {
                    ell = ell.max(d);
                }
            }
        }
        Ok(Layering {
            separator: separator.to_vec(),
            center,
            excluded,
            right,
            left,
            depth,
            ell,
            full,
        })
    }

    /// Picks the separator by `policy`, centers at its smallest vertex.
    pub fn for_graph(g: &LazyGraph, policy: SeparatorPolicy, depth: usize) -> Result<Layering> {
        let s = choose_separator(g, policy)?;
        Layering::build(g, &s, s[0], &[], depth)
    }

    /// First index at which the cuts `δ(R_≥n)` avoid the excluded set.
    pub fn base(&self) -> usize {
        self.ell + 1
    }

    pub fn class(&self, side: Side, i: usize) -> &BTreeSet<VertexId> {
        static EMPTY: BTreeSet<VertexId> = BTreeSet::new();
        let v = match side {
            Side::L => &self.left,
            Side::R => &self.right,
        };
        v.get(i).unwrap_or(&EMPTY)
    }

    /// `L` reaches the lookahead layer, so the graph is treated as two-sided.
    pub fn two_sided(&self) -> bool {
        !self.class(Side::L, self.depth + 1).is_empty()
    }

    pub fn vertices(&self, n: usize) -> BTreeSet<VertexId> {
        let mut out = self.excluded.clone();
        out.insert(self.center);
        for i in 1..=n.min(self.depth + 1) {
            out.extend(self.right[i].iter().copied());
            out.extend(self.left[i].iter().copied());
        }
        out
    }

    /// `∪_{i >= n} side_i` within the layering.
    pub fn outer(&self, side: Side, n: usize) -> BTreeSet<VertexId> {
        (n..=self.depth + 1)
            .flat_map(|i| self.class(side, i).iter().copied())
            .collect()
    }

    pub fn graph(&self, n: usize) -> FiniteGraph {
        self.full.induced_unchecked(&self.vertices(n))
    }

    /// The layered graph including the lookahead layer.
    pub fn full_graph(&self) -> &FiniteGraph {
        &self.full
    }

    pub fn locate(&self, v: VertexId) -> Option<(Side, usize)> {
        for side in [Side::L, Side::R] {
            for i in 1..=self.depth + 1 {
                if self.class(side, i).contains(&v) {
                    return Some((side, i));
                }
            }
        }
        None
    }

    /// Every class of both sides from `from` to `to` induces a clique.
    pub fn check_cliques(&self, from: usize, to: usize) -> Result<()> {
        for side in [Side::L, Side::R] {
            for i in from.max(1)..=to.min(self.depth + 1) {
                let c = self.class(side, i);
                if !self.full.is_clique(c) {
                    return Err(Error::structure(format!(
                        "class {side}_{i} is not a clique"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instantiate, FamilySpec};

    fn fam(spec: FamilySpec) -> LazyGraph {
        instantiate(&spec).unwrap()
    }

    #[test]
    fn separators_of_blowups() {
        for k in 1..=4u32 {
            let d = fam(FamilySpec::double_ray_blowup(k));
            assert_eq!(
                choose_separator(&d, SeparatorPolicy::Lexicographic).unwrap(),
                (0..k).collect::<Vec<_>>()
            );
            let r = fam(FamilySpec::ray_blowup(k));
            assert_eq!(
                choose_separator(&r, SeparatorPolicy::Lexicographic).unwrap(),
                (k..2 * k).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn double_ray_layers() {
        let l = Layering::for_graph(
            &fam(FamilySpec::double_ray_blowup(2)),
            SeparatorPolicy::Lexicographic,
            4,
        )
        .unwrap();
        assert_eq!(l.center, 0);
        assert_eq!(l.excluded, BTreeSet::from([1]));
        // cell +1 holds ids 2, 3 and cell -1 holds 4, 5
        assert_eq!(l.class(Side::R, 1), &BTreeSet::from([2, 3]));
        assert_eq!(l.class(Side::L, 1), &BTreeSet::from([4, 5]));
        assert_eq!(l.base(), 2);
        assert!(l.two_sided());
        assert_eq!(l.graph(2).order(), 10);
        l.check_cliques(1, 5).unwrap();
    }

    #[test]
    fn ray_layers_have_finite_left() {
        let l = Layering::for_graph(
            &fam(FamilySpec::ray_blowup(3)),
            SeparatorPolicy::Lexicographic,
            5,
        )
        .unwrap();
        assert_eq!(l.center, 3);
        assert_eq!(l.class(Side::L, 1), &BTreeSet::from([0, 1, 2]));
        assert!(l.class(Side::L, 2).is_empty());
        assert_eq!(l.class(Side::R, 1), &BTreeSet::from([6, 7, 8]));
        assert!(!l.two_sided());
        assert_eq!(l.base(), 2);
        assert_eq!(l.locate(8), Some((Side::R, 1)));
    }
}
