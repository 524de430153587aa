//! Spanning trees of one- and two-ended graphs whose leaves are a prescribed
//! mix of vertices and ends.
//!
//! Everything beyond `G_m` on a side is contracted to one vertex `ω`, joined
//! to the class-`m` vertices that see class `m + 1`. An exact search finds a
//! tree of the contracted graph with the prescribed leaves (a prescribed end
//! becomes a leaf `ω`, any other end must have degree exactly 2). Each tree
//! edge at `ω` is then replaced by a strand threading the outer cliques, so
//! a prescribed end is reached by one ray and any other end by two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::circle::{random_subsets, witness_list, CutProbes};
use super::cycle::{crossing_count, degrees, EdgeSet};
use super::layers::{Layering, SeparatorPolicy, Side};
use super::leafsearch::tree_with_leaves;
use super::report::Verification;
use super::strands::{thread_double, thread_single};
use crate::detect::{find_induced, Pattern};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, LazyGraph};
use crate::graph::{components, is_k_connected, Edge, FiniteGraph, VertexId};

const OMEGA_R: VertexId = VertexId::MAX;
const OMEGA_L: VertexId = VertexId::MAX - 1;

/// `W1` is the end on side `R`, `W2` the end on side `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndLabel {
    W1,
    W2,
}

impl EndLabel {
    pub fn side(self) -> Side {
        match self {
            EndLabel::W1 => Side::R,
            EndLabel::W2 => Side::L,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EndLabel::W1 => "w1",
            EndLabel::W2 => "w2",
        }
    }

    pub fn parse(s: &str) -> Option<EndLabel> {
        match s {
            "w1" => Some(EndLabel::W1),
            "w2" => Some(EndLabel::W2),
            _ => None,
        }
    }

    fn omega(self) -> VertexId {
        match self {
            EndLabel::W1 => OMEGA_R,
            EndLabel::W2 => OMEGA_L,
        }
    }
}

impl fmt::Display for EndLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeafSpec {
    Vertex(VertexId),
    End(EndLabel),
}

impl LeafSpec {
    pub fn parse(s: &str) -> Option<LeafSpec> {
        let s = s.trim();
        EndLabel::parse(s)
            .map(LeafSpec::End)
            .or_else(|| s.parse().ok().map(LeafSpec::Vertex))
    }

    /// Comma-separated, e.g. `3,4,w1`.
    pub fn parse_list(s: &str) -> Result<Vec<LeafSpec>> {
        s.split(',')
            .map(|t| LeafSpec::parse(t).ok_or_else(|| Error::input(format!("bad leaf `{t}`"))))
            .collect()
    }
}

impl fmt::Display for LeafSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeafSpec::Vertex(v) => write!(f, "{v}"),
            LeafSpec::End(e) => write!(f, "{e}"),
        }
    }
}

/// A ray towards `end`: it starts in class `base` of the end's side and
/// walks outwards class by class, truncated at the window depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayExtension {
    pub end: EndLabel,
    pub path: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCertificate {
    pub family: Option<FamilySpec>,
    pub depth: usize,
    /// The contracted window `G_base` the finite tree spans.
    pub base: usize,
    pub separator: Vec<VertexId>,
    pub center: VertexId,
    pub finite_tree: EdgeSet,
    pub prescribed_leaves: Vec<LeafSpec>,
    pub ray_extensions: Vec<RayExtension>,
}

impl TreeCertificate {
    /// The finite tree together with every ray edge.
    pub fn edges(&self) -> EdgeSet {
        let mut out = self.finite_tree.clone();
        for r in &self.ray_extensions {
            out.extend(r.path.windows(2).map(|w| Edge::new(w[0], w[1])));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafTreeOptions {
    /// Refuse `k` leaves unless the window is `(k+1)`-connected.
    pub require_connectivity: bool,
    /// Node budget of each exact search.
    pub budget: u64,
}

impl Default for LeafTreeOptions {
    fn default() -> Self {
        LeafTreeOptions {
            require_connectivity: true,
            budget: 2_000_000,
        }
    }
}

pub fn leaf_tree(g: &LazyGraph, leaves: &[LeafSpec], depth: usize) -> Result<TreeCertificate> {
    leaf_tree_with(g, leaves, depth, LeafTreeOptions::default())
}

pub fn leaf_tree_with(
    g: &LazyGraph,
    leaves: &[LeafSpec],
    depth: usize,
    opts: LeafTreeOptions,
) -> Result<TreeCertificate> {
    if !matches!(g.declared_ends, 1 | 2) {
        return Err(Error::precondition(
            "leaf trees need a one- or two-ended graph",
        ));
    }
    if leaves.len() < 2 {
        return Err(Error::input("at least two leaves must be prescribed"));
    }
    let mut seen = BTreeSet::new();
    for &x in leaves {
        if !seen.insert(x) {
            return Err(Error::precondition(format!("leaf {x} is listed twice")));
        }
        if x == LeafSpec::End(EndLabel::W2) && g.declared_ends < 2 {
            return Err(Error::precondition("a one-ended graph has no end w2"));
        }
    }
    let l = Layering::for_graph(g, SeparatorPolicy::Lexicographic, depth)?;
    let built = contracted_tree(&l, leaves, l.base(), opts)?;
    Ok(TreeCertificate {
        family: g.spec.clone(),
        depth,
        base: built.base,
        separator: l.separator.clone(),
        center: l.center,
        finite_tree: built.finite_tree,
        prescribed_leaves: leaves.to_vec(),
        ray_extensions: built.rays,
    })
}

pub(crate) struct ContractedTree {
    pub base: usize,
    pub finite_tree: EdgeSet,
    pub rays: Vec<RayExtension>,
}

fn level(l: &Layering, v: VertexId) -> Result<usize> {
    if v == l.center || l.excluded.contains(&v) {
        return Ok(0);
    }
    match l.locate(v) {
        Some((_, i)) if i <= l.depth => Ok(i),
        _ => Err(Error::input(format!("leaf {v} is outside the window"))),
    }
}

/// Tree of `G_m` plus rays, for the smallest workable `m >= m_min`.
pub(crate) fn contracted_tree(
    l: &Layering,
    leaves: &[LeafSpec],
    m_min: usize,
    opts: LeafTreeOptions,
) -> Result<ContractedTree> {
    let depth = l.depth;
    let mut m = m_min.max(1);
    for x in leaves {
        if let LeafSpec::Vertex(v) = *x {
            m = m.max(level(l, v)? + 1);
        }
    }
    if !l.two_sided() {
        // a finite side is swallowed whole by the base window
        m = m.max(
            (1..=depth)
                .rev()
                .find(|&i| !l.class(Side::L, i).is_empty())
                .unwrap_or(0),
        );
    }
    if m >= depth {
        return Err(Error::input(format!(
            "depth {depth} leaves no room for rays beyond G_{m}"
        )));
    }
    l.check_cliques(m, depth + 1)?;
    let k = leaves.len();
    if opts.require_connectivity && !is_k_connected(&l.graph(m + 1), k + 1)? {
        return Err(Error::precondition(format!(
            "G_{} is not {}-connected, so {k} leaves cannot be prescribed",
            m + 1,
            k + 1
        )));
    }
    let top = l.graph(depth);
    for pattern in [Pattern::Claw, Pattern::Net] {
        if let Some(hit) = find_induced(&top, pattern) {
            return Err(Error::precondition(format!(
                "window G_{depth} contains an induced {hit}"
            )));
        }
    }
    let mut why = String::new();
    while m < depth {
        match attempt(l, leaves, m, opts.budget) {
            Ok(Some(t)) => return Ok(t),
            Ok(None) => why = format!("no tree with these leaves in contracted G_{m}"),
            Err(Error::SearchExhausted(s)) => why = format!("contracted G_{m}: {s}"),
            Err(e) => return Err(e),
        }
        m += 1;
    }
    Err(Error::SearchExhausted(format!(
        "window G_{depth} exhausted ({why})"
    )))
}

fn attempt(
    l: &Layering,
    leaves: &[LeafSpec],
    m: usize,
    budget: u64,
) -> Result<Option<ContractedTree>> {
    let full = l.full_graph();
    let ends: Vec<EndLabel> = if l.two_sided() {
        vec![EndLabel::W1, EndLabel::W2]
    } else {
        vec![EndLabel::W1]
    };
    let mut h = l.graph(m);
    for &e in &ends {
        let side = e.side();
        let next = l.class(side, m + 1);
        h.add_vertex(e.omega());
        for &x in l.class(side, m) {
            if full.neighbors(x).iter().any(|w| next.contains(w)) {
                h.add_edge(e.omega(), x);
            }
        }
    }
    let leaf_ids: BTreeSet<VertexId> = leaves
        .iter()
        .map(|x| match *x {
            LeafSpec::Vertex(v) => v,
            LeafSpec::End(e) => e.omega(),
        })
        .collect();
    let no_branch: BTreeSet<VertexId> = ends
        .iter()
        .map(|e| e.omega())
        .filter(|w| !leaf_ids.contains(w))
        .collect();
    let Some(tree) = tree_with_leaves(&h, &leaf_ids, &no_branch, budget)? else {
        return Ok(None);
    };

    let is_omega = |v: VertexId| v == OMEGA_R || v == OMEGA_L;
    let finite_tree: EdgeSet = tree
        .iter()
        .copied()
        .filter(|e| !is_omega(e.lo()) && !is_omega(e.hi()))
        .collect();
    let mut rays = Vec::new();
    for &e in &ends {
        let roots: Vec<VertexId> = tree
            .iter()
            .filter(|t| t.contains(e.omega()))
            .map(|t| t.other(e.omega()))
            .collect();
        let classes: Vec<BTreeSet<VertexId>> = (m + 1..=l.depth)
            .map(|i| l.class(e.side(), i).clone())
            .collect();
        match roots[..] {
            [r] => {
                let mut path = vec![r];
                path.extend(thread_single(full, &classes, Some(r), None)?);
                rays.push(RayExtension { end: e, path });
            }
            [r1, r2] => {
                let [a, b] = thread_double(full, &classes, [r1, r2])?;
                rays.push(RayExtension {
                    end: e,
                    path: [vec![r1], a].concat(),
                });
                rays.push(RayExtension {
                    end: e,
                    path: [vec![r2], b].concat(),
                });
            }
            _ => {
                return Err(Error::internal(format!(
                    "end {e} has tree degree {}",
                    roots.len()
                )))
            }
        }
    }
    Ok(Some(ContractedTree {
        base: m,
        finite_tree,
        rays,
    }))
}

pub fn verify_tree_certificate(
    cert: &TreeCertificate,
    g: &LazyGraph,
    probes: CutProbes,
) -> Verification {
    let mut rep = Verification::default();
    let depth = cert.depth;
    let l = match Layering::build(g, &cert.separator, cert.center, &[], depth) {
        Ok(l) => l,
        Err(e) => {
            rep.push("layering", false, e.to_string());
            return rep;
        }
    };
    rep.push(
        "layering",
        cert.base >= 1 && cert.base < depth,
        format!("finite tree on G_{} inside G_{depth}", cert.base),
    );

    let edges = cert.edges();
    let window = l.graph(depth);
    let foreign: Vec<Edge> = edges
        .iter()
        .copied()
        .filter(|e| !window.has_edge(e.lo(), e.hi()))
        .collect();
    rep.push(
        "edges",
        foreign.is_empty(),
        witness_list("not an edge of G_n:", &foreign),
    );

    let touched: BTreeSet<VertexId> = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
    let all = l.vertices(depth);
    let missed: Vec<VertexId> = all.difference(&touched).copied().collect();
    rep.push(
        "spanning",
        missed.is_empty() && touched.is_subset(&all),
        witness_list("uncovered:", &missed),
    );

    // each end is a point of the tree, joined to the far tip of its rays
    let mut points = touched.clone();
    let mut links: Vec<(VertexId, VertexId)> = edges.iter().map(|e| (e.lo(), e.hi())).collect();
    for r in &cert.ray_extensions {
        points.insert(r.end.omega());
        if let Some(&tip) = r.path.last() {
            links.push((tip, r.end.omega()));
        }
    }
    let pieces = FiniteGraph::from_parts(points.iter().copied(), links.iter().copied())
        .map(|u| components(&u).len())
        .unwrap_or(0);
    rep.push(
        "connected",
        pieces == 1,
        format!("{pieces} components with ends as points"),
    );
    rep.push(
        "acyclic",
        links.len() + 1 == points.len(),
        format!("{} edges on {} points", links.len(), points.len()),
    );

    let tips: BTreeSet<VertexId> = cert
        .ray_extensions
        .iter()
        .filter_map(|r| r.path.last().copied())
        .collect();
    let leaves: BTreeSet<VertexId> = degrees(&edges)
        .into_iter()
        .filter(|&(v, d)| d == 1 && !tips.contains(&v))
        .map(|(v, _)| v)
        .collect();
    let wanted: BTreeSet<VertexId> = cert
        .prescribed_leaves
        .iter()
        .filter_map(|x| match x {
            LeafSpec::Vertex(v) => Some(*v),
            LeafSpec::End(_) => None,
        })
        .collect();
    let odd: Vec<VertexId> = leaves.symmetric_difference(&wanted).copied().collect();
    rep.push(
        "leaf-set",
        odd.is_empty(),
        witness_list("leaf status wrong at", &odd),
    );

    let mut problems = Vec::new();
    let mut count: BTreeMap<EndLabel, usize> = BTreeMap::new();
    for r in &cert.ray_extensions {
        *count.entry(r.end).or_default() += 1;
        let levels: Vec<Option<usize>> = r
            .path
            .iter()
            .map(|&v| (cert.base..=depth).find(|&i| l.class(r.end.side(), i).contains(&v)))
            .collect();
        // starts in class `base`, never steps back or skips a class, ends outermost
        let placed = levels.first() == Some(&Some(cert.base))
            && levels.last() == Some(&Some(depth))
            && levels.windows(2).all(|w| match (w[0], w[1]) {
                (Some(a), Some(b)) => b == a || b == a + 1,
                _ => false,
            });
        if !placed {
            problems.push(format!("ray to {} leaves its side", r.end));
        }
    }
    let ends: &[EndLabel] = if l.two_sided() {
        &[EndLabel::W1, EndLabel::W2]
    } else {
        &[EndLabel::W1]
    };
    for &e in ends {
        let want = if cert.prescribed_leaves.contains(&LeafSpec::End(e)) {
            1
        } else {
            2
        };
        let got = count.get(&e).copied().unwrap_or(0);
        if got != want {
            problems.push(format!("{e} has {got} rays, expected {want}"));
        }
    }
    for e in count.keys().filter(|e| !ends.contains(e)) {
        problems.push(format!("{e} is not an end of this graph"));
    }
    rep.push(
        "end-rays",
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} rays placed", cert.ray_extensions.len())
        } else {
            problems.join("; ")
        },
    );

    let mut cuts: Vec<(String, BTreeSet<VertexId>)> = (0..depth)
        .map(|n| (format!("V(G_{n})"), l.vertices(n)))
        .collect();
    let nested = cuts.len();
    for (i, x) in random_subsets(&l.vertices(depth.saturating_sub(1)), probes)
        .into_iter()
        .enumerate()
    {
        cuts.push((format!("random#{i}"), x));
    }
    let missed_cut = cuts.iter().find(|(_, x)| crossing_count(&edges, x) == 0);
    rep.push(
        "cut-coverage",
        missed_cut.is_none(),
        match missed_cut {
            None => format!(
                "{nested} nested and {} random cuts (seed {})",
                cuts.len() - nested,
                probes.seed
            ),
            Some((name, _)) => format!("cut {name} not met"),
        },
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::instantiate;

    fn fam(spec: FamilySpec) -> LazyGraph {
        instantiate(&spec).unwrap()
    }

    #[test]
    fn leaf_specs_parse() {
        let xs = LeafSpec::parse_list("3, w1,w2").unwrap();
        assert_eq!(
            xs,
            vec![
                LeafSpec::Vertex(3),
                LeafSpec::End(EndLabel::W1),
                LeafSpec::End(EndLabel::W2)
            ]
        );
        assert_eq!(
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            ["3", "w1", "w2"]
        );
        assert!(LeafSpec::parse_list("3,w3").is_err());
    }

    #[test]
    fn two_ends_as_leaves_on_double_blowup() {
        let g = fam(FamilySpec::double_ray_blowup(3));
        let leaves = [LeafSpec::End(EndLabel::W1), LeafSpec::End(EndLabel::W2)];
        let cert = leaf_tree(&g, &leaves, 6).unwrap();
        let rep = verify_tree_certificate(&cert, &g, CutProbes::default());
        assert!(rep.passed(), "{rep}");
        assert_eq!(cert.ray_extensions.len(), 2);
    }

    #[test]
    fn vertex_and_end_on_ray_blowup_is_a_hamilton_ray() {
        let g = fam(FamilySpec::ray_blowup(2));
        let opts = LeafTreeOptions {
            require_connectivity: false,
            ..Default::default()
        };
        let cert = leaf_tree_with(
            &g,
            &[LeafSpec::Vertex(0), LeafSpec::End(EndLabel::W1)],
            6,
            opts,
        )
        .unwrap();
        let rep = verify_tree_certificate(&cert, &g, CutProbes::default());
        assert!(rep.passed(), "{rep}");
        let deg = degrees(&cert.edges());
        let tip = cert.ray_extensions[0].path.last().unwrap();
        assert!(deg.iter().all(|(v, &d)| d == 2 || v == &0 || v == tip));
    }

    #[test]
    fn connectivity_and_label_preconditions() {
        let g = fam(FamilySpec::double_ray_blowup(3));
        let three = [
            LeafSpec::Vertex(0),
            LeafSpec::End(EndLabel::W1),
            LeafSpec::End(EndLabel::W2),
        ];
        assert!(matches!(
            leaf_tree(&g, &three, 6),
            Err(Error::Precondition(_))
        ));
        let r = fam(FamilySpec::ray_blowup(3));
        let twice = [LeafSpec::End(EndLabel::W1), LeafSpec::End(EndLabel::W1)];
        assert!(matches!(
            leaf_tree(&r, &twice, 6),
            Err(Error::Precondition(_))
        ));
        let w2 = [LeafSpec::Vertex(0), LeafSpec::End(EndLabel::W2)];
        assert!(matches!(leaf_tree(&r, &w2, 6), Err(Error::Precondition(_))));
    }

    #[test]
    fn corrupted_tree_certificates_fail() {
        let g = fam(FamilySpec::double_ray_blowup(5));
        let leaves = [
            LeafSpec::Vertex(0),
            LeafSpec::Vertex(1),
            LeafSpec::End(EndLabel::W1),
            LeafSpec::End(EndLabel::W2),
        ];
        let cert = leaf_tree(&g, &leaves, 5).unwrap();
        assert!(verify_tree_certificate(&cert, &g, CutProbes::default()).passed());

        let mut wrong_side = cert.clone();
        wrong_side.ray_extensions[0].end = match wrong_side.ray_extensions[0].end {
            EndLabel::W1 => EndLabel::W2,
            EndLabel::W2 => EndLabel::W1,
        };
        assert!(verify_tree_certificate(&wrong_side, &g, CutProbes::default()).failed("end-rays"));

        // dropping a finite tree edge whose end then has degree 1
        let deg = degrees(&cert.edges());
        let e = *cert
            .finite_tree
            .iter()
            .find(|e| {
                deg[&e.lo()] == 2 && !cert.prescribed_leaves.contains(&LeafSpec::Vertex(e.lo()))
            })
            .unwrap();
        let mut cut = cert.clone();
        cut.finite_tree.remove(&e);
        assert!(verify_tree_certificate(&cut, &g, CutProbes::default()).failed("leaf-set"));
    }
}
