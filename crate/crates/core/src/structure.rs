//! Separator-based structure checks: distance-2-completeness, separator
//! cliques, and the two-end bound.

use std::collections::BTreeSet;

use crate::detect::{is_claw_free, is_net_free};
use crate::error::{Error, Result};
use crate::families::{end_count_empirical, geodetic_double_ray, window, LazyGraph};
use crate::graph::{components, is_connected, minimal_separators, FiniteGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance2Report {
    pub center: VertexId,
    pub component_count: usize,
    /// `(component index, distance class index, class is a clique)`, one
    /// entry per class `i >= 1` of every component of `G - v`.
    pub per_class_clique: Vec<(usize, usize, bool)>,
    pub verdict: bool,
}

/// `G - v` has exactly two components, and in `G[C + v]` every distance class
/// from `v` is a clique, for both components `C`.
pub fn is_distance_2_complete_centered(g: &FiniteGraph, v: VertexId) -> Result<Distance2Report> {
    if !g.contains(v) {
        return Err(Error::input(format!("vertex {v} is not in the graph")));
    }
    let comps = components(&g.without_vertex(v));
    let mut per_class_clique = Vec::new();
    for (ci, c) in comps.iter().enumerate() {
        let mut part = c.clone();
        part.insert(v);
        let sub = g.induced_unchecked(&part);
        for (i, class) in sub.distance_classes(v)?.iter().enumerate().skip(1) {
            per_class_clique.push((ci, i, sub.is_clique(class)));
        }
    }
    let verdict = comps.len() == 2 && per_class_clique.iter().all(|&(_, _, ok)| ok);
    Ok(Distance2Report {
        center: v,
        component_count: comps.len(),
        per_class_clique,
        verdict,
    })
}

/// Separator quantifications default to sizes up to the maximum degree plus one.
pub fn default_size_cap(g: &FiniteGraph) -> usize {
    g.max_degree() + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShepherdReport {
    pub holds: bool,
    /// A separator `S` and a center `v ∈ S` for which `G - (S - v)` is not
    /// distance-2-complete centered at `v`.
    pub witness: Option<(Vec<VertexId>, VertexId)>,
    pub separators_checked: usize,
    pub size_cap: usize,
}

fn checked_separators(g: &FiniteGraph, size_cap: usize) -> Result<Vec<Vec<VertexId>>> {
    if size_cap == 0 {
        return Err(Error::input("size cap must be positive"));
    }
    if !is_connected(g) {
        return Err(Error::input("structure checks need a connected graph"));
    }
    Ok(minimal_separators(g, size_cap)?
        .into_iter()
        .map(|s| s.vertices)
        .collect())
}

/// For every minimal separator `S` with `|S| <= size_cap` and every `v ∈ S`,
/// `G - (S - v)` is distance-2-complete centered at `v`.
pub fn check_shepherd_characterization(g: &FiniteGraph, size_cap: usize) -> Result<ShepherdReport> {
    let seps = checked_separators(g, size_cap)?;
    for s in &seps {
        for &v in s {
            let rest: BTreeSet<VertexId> = s.iter().copied().filter(|&x| x != v).collect();
            if !is_distance_2_complete_centered(&g.without(&rest), v)?.verdict {
                return Ok(ShepherdReport {
                    holds: false,
                    witness: Some((s.clone(), v)),
                    separators_checked: seps.len(),
                    size_cap,
                });
            }
        }
    }
    Ok(ShepherdReport {
        holds: true,
        witness: None,
        separators_checked: seps.len(),
        size_cap,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorCliqueReport {
    pub holds: bool,
    pub witness: Option<Vec<VertexId>>,
    pub separators_checked: usize,
    pub size_cap: usize,
}

/// Every minimal separator with `|S| <= size_cap` induces a clique.
pub fn separator_clique_check(g: &FiniteGraph, size_cap: usize) -> Result<SeparatorCliqueReport> {
    let seps = checked_separators(g, size_cap)?;
    let witness = seps
        .iter()
        .find(|s| !g.is_clique(&s.iter().copied().collect()))
        .cloned();
    Ok(SeparatorCliqueReport {
        holds: witness.is_none(),
        witness,
        separators_checked: seps.len(),
        size_cap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    /// The window is not both claw-free and net-free; nothing is asserted.
    Vacuous,
    Holds,
    Fails,
}

impl Implication {
    pub fn as_str(self) -> &'static str {
        match self {
            Implication::Vacuous => "vacuous",
            Implication::Holds => "holds",
            Implication::Fails => "fails",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndBoundReport {
    pub depth: usize,
    pub claw_free: bool,
    pub net_free: bool,
    pub end_count: usize,
    /// claw-free and net-free ⇒ at most two ends.
    pub implication: Implication,
    /// For two-ended graphs: the geodetic double ray used for the distance bound.
    pub double_ray: Option<Vec<VertexId>>,
    /// Largest distance from a window vertex to `double_ray`.
    pub max_distance_from_ray: Option<usize>,
}

impl EndBoundReport {
    pub fn ok(&self) -> bool {
        self.implication != Implication::Fails
            && self.max_distance_from_ray.map_or(true, |d| d <= 1)
    }
}

pub fn end_bound_suite(g: &LazyGraph, depth: usize) -> Result<EndBoundReport> {
    if depth == 0 {
        return Err(Error::input("depth must be positive"));
    }
    let w = window(g, depth)?;
    let claw_free = is_claw_free(&w.graph);
    let net_free = is_net_free(&w.graph);
    let end_count = end_count_empirical(g, depth)?;
    let implication = match (claw_free && net_free, end_count <= 2) {
        (false, _) => Implication::Vacuous,
        (true, true) => Implication::Holds,
        (true, false) => Implication::Fails,
    };
    let (double_ray, max_distance_from_ray) = if g.declared_ends == 2 {
        let ray = geodetic_double_ray(g, depth)?;
        // distances measured inside a larger window, which holds the whole ray
        let big = window(g, 2 * depth)?;
        let dist = big.graph.distances_from(&ray.iter().copied().collect());
        let max = w
            .graph
            .vertices()
            .map(|v| {
                dist.get(&v)
                    .copied()
                    .ok_or_else(|| Error::internal("window vertex unreachable"))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max();
        (Some(ray), max)
    } else {
        (None, None)
    };
    Ok(EndBoundReport {
        depth,
        claw_free,
        net_free,
        end_count,
        implication,
        double_ray,
        max_distance_from_ray,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instantiate, FamilySpec, PeriodTable};

    fn g(edges: &[(u32, u32)]) -> FiniteGraph {
        FiniteGraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn fam(spec: FamilySpec) -> LazyGraph {
        instantiate(&spec).unwrap()
    }

    #[test]
    fn distance_2_examples() {
        let p3 = g(&[(0, 1), (1, 2)]);
        let r = is_distance_2_complete_centered(&p3, 1).unwrap();
        assert!(r.verdict);
        assert_eq!(r.per_class_clique, vec![(0, 1, true), (1, 1, true)]);

        let claw = g(&[(0, 1), (0, 2), (0, 3)]);
        let r = is_distance_2_complete_centered(&claw, 0).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.component_count, 3);

        assert!(is_distance_2_complete_centered(&p3, 9).is_err());
    }

    #[test]
    fn distance_2_on_ray_blowup_cut_clique() {
        // window of the 2-blow-up; vertex 3 sits in clique {2, 3}
        let w = window(&fam(FamilySpec::ray_blowup(2)), 4).unwrap();
        let without_mate = w.graph.without_vertex(2);
        let r = is_distance_2_complete_centered(&without_mate, 3).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.verdict);
    }

    #[test]
    fn shepherd_examples() {
        let p5 = g(&[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let r = check_shepherd_characterization(&p5, default_size_cap(&p5)).unwrap();
        assert!(r.holds);
        assert_eq!(r.separators_checked, 3);

        let claw = g(&[(0, 1), (0, 2), (0, 3)]);
        let r = check_shepherd_characterization(&claw, 4).unwrap();
        assert_eq!(r.witness, Some((vec![0], 0)));

        let w = window(&fam(FamilySpec::double_ray_blowup(2)), 4).unwrap();
        let r = check_shepherd_characterization(&w.graph, default_size_cap(&w.graph)).unwrap();
        assert!(r.holds && r.separators_checked > 0);

        let two = g(&[(0, 1), (2, 3)]);
        assert!(check_shepherd_characterization(&two, 2).is_err());
    }

    #[test]
    fn separator_clique_examples() {
        let c4 = g(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            separator_clique_check(&c4, 4).unwrap().witness,
            Some(vec![0, 2])
        );
        let p3 = g(&[(0, 1), (1, 2)]);
        assert!(separator_clique_check(&p3, 2).unwrap().holds);
        let w = window(&fam(FamilySpec::ray_blowup(2)), 5).unwrap();
        assert!(
            separator_clique_check(&w.graph, default_size_cap(&w.graph))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn window_separators_leave_two_components() {
        for spec in crate::families::catalog() {
            let w = window(&fam(spec), 4).unwrap();
            for s in minimal_separators(&w.graph, default_size_cap(&w.graph)).unwrap() {
                let comps = components(&w.graph.without(&s.vertices.iter().copied().collect()));
                assert_eq!(comps.len(), 2, "separator {:?}", s.vertices);
            }
        }
    }

    #[test]
    fn end_bound_examples() {
        let r = end_bound_suite(&fam(FamilySpec::double_ray_blowup(3)), 5).unwrap();
        assert_eq!(r.implication, Implication::Holds);
        assert_eq!(r.end_count, 2);
        assert_eq!(r.max_distance_from_ray, Some(1));

        let r = end_bound_suite(&fam(FamilySpec::ray_blowup(1)), 5).unwrap();
        assert_eq!(r.end_count, 1);
        assert!(r.ok() && r.max_distance_from_ray.is_none());

        // the ladder has claws, so nothing is asserted
        let r = end_bound_suite(&fam(FamilySpec::custom(PeriodTable::ladder(), 1)), 4).unwrap();
        assert!(!r.claw_free);
        assert_eq!(r.implication, Implication::Vacuous);
    }
}
