//! Spanning rays and double rays, as Hamilton paths of the layered windows
//! whose truncations are again Hamilton paths of the smaller windows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::cycle::is_hamilton_path;
use super::layers::{choose_separator, Layering, SeparatorPolicy, Side};
use super::leaf_tree::{contracted_tree, EndLabel, LeafSpec, LeafTreeOptions};
use super::report::Verification;
use super::strands::thread_single;
use crate::detect::{find_induced, Pattern};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, LazyGraph};
use crate::graph::{Edge, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanningKind {
    Ray,
    DoubleRay,
}

impl SpanningKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpanningKind::Ray => "ray",
            SpanningKind::DoubleRay => "double-ray",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ray" => Some(SpanningKind::Ray),
            "double-ray" => Some(SpanningKind::DoubleRay),
            _ => None,
        }
    }
}

/// Which connectivity case produced the path, by the size of the separator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanningCase {
    CutVertex,
    TwoSeparator,
    ThreeConnected,
}

impl SpanningCase {
    pub fn as_str(self) -> &'static str {
        match self {
            SpanningCase::CutVertex => "cut-vertex",
            SpanningCase::TwoSeparator => "two-separator",
            SpanningCase::ThreeConnected => "three-connected",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cut-vertex" => Some(SpanningCase::CutVertex),
            "two-separator" => Some(SpanningCase::TwoSeparator),
            "three-connected" => Some(SpanningCase::ThreeConnected),
            _ => None,
        }
    }
}

impl fmt::Display for SpanningCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningPath {
    pub family: Option<FamilySpec>,
    pub kind: SpanningKind,
    pub case: SpanningCase,
    pub depth: usize,
    /// Truncations to `G_n` are Hamilton paths for every `n >= base`.
    pub base: usize,
    pub separator: Vec<VertexId>,
    pub center: VertexId,
    /// Runs from the `L` side (or the finite part) out to `R_depth`.
    pub path: Vec<VertexId>,
}

pub fn spanning_ray_or_double_ray(g: &LazyGraph, depth: usize) -> Result<SpanningPath> {
    let kind = match g.declared_ends {
        1 => SpanningKind::Ray,
        2 => SpanningKind::DoubleRay,
        _ => {
            return Err(Error::precondition(
                "spanning rays need a one- or two-ended graph",
            ))
        }
    };
    if depth == 0 {
        return Err(Error::input("depth must be positive"));
    }
    let s = choose_separator(g, SeparatorPolicy::SmallestFirst)?;
    let case = match s.len() {
        1 => SpanningCase::CutVertex,
        2 => SpanningCase::TwoSeparator,
        _ => SpanningCase::ThreeConnected,
    };
    let named = |e: Error| match e {
        Error::Structure(m) => Error::Structure(format!("{case} case: {m}")),
        e => e,
    };
    let (l, base, path) = match case {
        SpanningCase::CutVertex => {
            let l = Layering::build(g, &s, s[0], &[], depth)?;
            precheck(&l)?;
            let path = thread_single(l.full_graph(), &chain(&l), None, None).map_err(named)?;
            (l, 1, path)
        }
        SpanningCase::TwoSeparator => two_separator(g, &s, depth).map_err(named)?,
        SpanningCase::ThreeConnected => {
            let l = Layering::build(g, &s, s[0], &[], depth)?;
            precheck(&l)?;
            let (base, path) = via_leaf_tree(&l).map_err(named)?;
            (l, base, path)
        }
    };
    Ok(SpanningPath {
        family: g.spec.clone(),
        kind,
        case,
        depth,
        base,
        separator: l.separator.clone(),
        center: l.center,
        path,
    })
}

fn precheck(l: &Layering) -> Result<()> {
    let top = l.graph(l.depth);
    for pattern in [Pattern::Claw, Pattern::Net] {
        if let Some(hit) = find_induced(&top, pattern) {
            return Err(Error::precondition(format!(
                "window G_{} contains an induced {hit}",
                l.depth
            )));
        }
    }
    l.check_cliques(1, l.depth)
}

/// `L_t, …, L_1, {v}, R_1, …, R_depth`, skipping empty outer `L` classes.
fn chain(l: &Layering) -> Vec<BTreeSet<VertexId>> {
    let mut out: Vec<BTreeSet<VertexId>> = (1..=l.depth)
        .rev()
        .map(|i| l.class(Side::L, i).clone())
        .filter(|c| !c.is_empty())
        .collect();
    out.push(BTreeSet::from([l.center]));
    out.extend((1..=l.depth).map(|i| l.class(Side::R, i).clone()));
    out
}

/// `G - u` is layered from `v`; a path through its chain that uses an edge
/// `u₁u₂` between neighbours of `u` takes `u` in as `u₁ u u₂`.
fn two_separator(
    g: &LazyGraph,
    s: &[VertexId],
    depth: usize,
) -> Result<(Layering, usize, Vec<VertexId>)> {
    let mut last = None;
    for (u, v) in [(s[1], s[0]), (s[0], s[1])] {
        let l = Layering::build(g, s, v, &[], depth)?;
        precheck(&l)?;
        let full = l.full_graph();
        let nu: Vec<VertexId> = full
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        let links = chain(&l);
        for (i, &a) in nu.iter().enumerate() {
            for &b in &nu[i + 1..] {
                if !full.has_edge(a, b) {
                    continue;
                }
                match thread_single(full, &links, None, Some(Edge::new(a, b))) {
                    Ok(mut p) => {
                        let at = p
                            .windows(2)
                            .position(|w| Edge::new(w[0], w[1]) == Edge::new(a, b));
                        let Some(at) = at else {
                            return Err(Error::internal(format!(
                                "forced edge {a}-{b} missing from the chain path"
                            )));
                        };
                        p.insert(at + 1, u);
                        return Ok((l.clone(), l.base(), p));
                    }
                    Err(e) => last = Some(e),
                }
            }
        }
    }
    Err(last.unwrap_or_else(|| {
        Error::structure("neither separator vertex has two adjacent neighbours to splice into")
    }))
}

/// A tree whose only leaves are the ends (or a vertex and the end) is a path.
fn via_leaf_tree(l: &Layering) -> Result<(usize, Vec<VertexId>)> {
    let leaves = if l.two_sided() {
        vec![LeafSpec::End(EndLabel::W2), LeafSpec::End(EndLabel::W1)]
    } else {
        vec![LeafSpec::Vertex(l.center), LeafSpec::End(EndLabel::W1)]
    };
    let opts = LeafTreeOptions {
        require_connectivity: false,
        ..Default::default()
    };
    let t = contracted_tree(l, &leaves, l.base(), opts)?;
    let ray = |e: EndLabel| {
        t.rays
            .iter()
            .find(|r| r.end == e)
            .map(|r| r.path.clone())
            .ok_or_else(|| Error::internal(format!("no ray towards {e}")))
    };
    let right = ray(EndLabel::W1)?;
    let start = if l.two_sided() {
        ray(EndLabel::W2)?[0]
    } else {
        l.center
    };
    let middle = walk(&t.finite_tree, start)?;
    if middle.last() != right.first() {
        return Err(Error::internal(
            "finite path does not end where the ray starts",
        ));
    }
    let mut path = Vec::new();
    if l.two_sided() {
        path.extend(ray(EndLabel::W2)?.into_iter().rev());
        path.pop();
    }
    path.extend(middle);
    path.extend(right.into_iter().skip(1));
    Ok((t.base, path))
}

/// The vertex sequence of a path given by its edges, read from `start`.
fn walk(edges: &BTreeSet<Edge>, start: VertexId) -> Result<Vec<VertexId>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    let mut out = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&next) = adj
        .get(&cur)
        .and_then(|ns| ns.iter().find(|&&w| Some(w) != prev))
    {
        prev = Some(cur);
        cur = next;
        out.push(cur);
        if out.len() > edges.len() + 1 {
            return Err(Error::internal("edge set is not a path"));
        }
    }
    if out.len() != edges.len() + 1 {
        return Err(Error::internal("edge set is not a path"));
    }
    Ok(out)
}

pub fn verify_spanning_path(sp: &SpanningPath, g: &LazyGraph) -> Verification {
    let mut rep = Verification::default();
    let l = match Layering::build(g, &sp.separator, sp.center, &[], sp.depth) {
        Ok(l) => l,
        Err(e) => {
            rep.push("layering", false, e.to_string());
            return rep;
        }
    };
    rep.push(
        "layering",
        sp.base <= sp.depth,
        format!("truncations from G_{}", sp.base),
    );
    let want = if g.declared_ends == 2 {
        SpanningKind::DoubleRay
    } else {
        SpanningKind::Ray
    };
    rep.push(
        "kind",
        sp.kind == want,
        format!("{} for {} declared ends", sp.kind.as_str(), g.declared_ends),
    );
    rep.push(
        "hamilton-path",
        is_hamilton_path(&l.graph(sp.depth), &sp.path),
        format!("{} vertices", sp.path.len()),
    );

    let mut bad_trunc = Vec::new();
    let mut bad_ends = Vec::new();
    for n in sp.base..=sp.depth {
        let inside = l.vertices(n);
        let pos: Vec<usize> = (0..sp.path.len())
            .filter(|&i| inside.contains(&sp.path[i]))
            .collect();
        let (Some(&a), Some(&b)) = (pos.first(), pos.last()) else {
            bad_trunc.push(n);
            continue;
        };
        let seg = &sp.path[a..=b];
        if b - a + 1 != pos.len() || !is_hamilton_path(&l.graph(n), seg) {
            bad_trunc.push(n);
            continue;
        }
        let right_ok = l.class(Side::R, n).contains(&seg[seg.len() - 1]);
        let left_ok = sp.kind == SpanningKind::Ray || l.class(Side::L, n).contains(&seg[0]);
        if !right_ok || !left_ok {
            bad_ends.push(n);
        }
    }
    rep.push(
        "truncations",
        bad_trunc.is_empty(),
        super::circle::witness_list("not a Hamilton path of G_n at n =", &bad_trunc),
    );
    rep.push(
        "endpoints",
        bad_ends.is_empty(),
        super::circle::witness_list("endpoint not outermost at n =", &bad_ends),
    );
    rep
}
