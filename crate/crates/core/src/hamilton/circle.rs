//! Hamilton circles as stabilizing sequences of finite Hamilton cycles.
//!
//! A cycle `D_n` of `G_n` is normalized so that it crosses each outermost
//! cut `δ(R_≥n)`, `δ(L_≥n)` exactly twice. Extending to `G_{n+1}` only
//! rewrites edges inside `R_n ∪ R_{n+1}` (and `L_n ∪ L_{n+1}`), so
//! `D_{n+1}` and `D_n` agree on `G_{n-1}` and the edge sets converge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cycle::{clique_path, crossing_count, cycle_order, degrees, is_hamilton_cycle, EdgeSet};
use super::finite::finite_hamilton_cycle;
use super::layers::{Layering, SeparatorPolicy, Side};
use super::report::Verification;
use crate::detect::{find_induced, Pattern};
use crate::error::{Error, Result};
use crate::families::{FamilySpec, LazyGraph};
use crate::graph::{Edge, VertexId};

/// How an extension step joined `R_n` to `R_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtensionCase {
    /// The bridge feet and the cycle's entry and exit span at least three
    /// vertices (or the class has only two).
    Direct,
    /// Both feet were the entry and exit; the cycle now enters at `x`.
    MovedEntry,
    /// Both feet were the entry and exit; `x` became a bridge foot.
    MovedFoot,
}

impl ExtensionCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtensionCase::Direct => "1",
            ExtensionCase::MovedEntry => "2a",
            ExtensionCase::MovedFoot => "2b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            ExtensionCase::Direct,
            ExtensionCase::MovedEntry,
            ExtensionCase::MovedFoot,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }
}

impl fmt::Display for ExtensionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Hamilton cycle of `G_depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePrefix {
    pub depth: usize,
    pub edges: EdgeSet,
    pub separator: Vec<VertexId>,
    pub center: VertexId,
    /// `(side, n) ↦ |edges ∩ δ(side_≥n)|` for the nonempty classes `n` from
    /// the base depth up to `depth`.
    pub crossing_counts: BTreeMap<(Side, usize), usize>,
    /// The extension case used on each side to reach this depth.
    pub cases: Vec<(Side, ExtensionCase)>,
}

impl CyclePrefix {
    pub fn new(
        l: &Layering,
        depth: usize,
        edges: EdgeSet,
        cases: Vec<(Side, ExtensionCase)>,
    ) -> Self {
        let crossing_counts = crossing_table(l, depth, &edges);
        CyclePrefix {
            depth,
            edges,
            separator: l.separator.clone(),
            center: l.center,
            crossing_counts,
            cases,
        }
    }
}

pub(crate) fn crossing_table(
    l: &Layering,
    depth: usize,
    edges: &EdgeSet,
) -> BTreeMap<(Side, usize), usize> {
    let mut out = BTreeMap::new();
    for side in [Side::L, Side::R] {
        for n in l.base()..=depth {
            if !l.class(side, n).is_empty() {
                out.insert((side, n), crossing_count(edges, &l.outer(side, n)));
            }
        }
    }
    out
}

fn check_pair_cliques(l: &Layering, side: Side, n: usize) -> Result<()> {
    let g = l.full_graph();
    for i in [n - 1, n] {
        if i >= 1 && !g.is_clique(l.class(side, i)) {
            return Err(Error::structure(format!(
                "class {side}_{i} is not a clique"
            )));
        }
    }
    Ok(())
}

/// Reroutes the outermost class `side_n` of the cycle so that it is entered
/// and left exactly once.
///
/// Every visit `p → r… → q` to the class is replaced by the edge `pq` of the
/// clique `side_{n-1}`; then the whole class is reinserted as one clique path
/// in place of the first replaced edge whose ends see two distinct class
/// vertices.
pub fn normalize_crossings(
    prefix: &CyclePrefix,
    l: &Layering,
    n: usize,
    side: Side,
) -> Result<CyclePrefix> {
    if n != prefix.depth {
        return Err(Error::input(format!(
            "only the outermost class can be normalized (asked {n}, prefix depth {})",
            prefix.depth
        )));
    }
    if n < l.base() {
        return Err(Error::input(format!(
            "class {n} is inside the separator's reach"
        )));
    }
    let class = l.class(side, n);
    if class.is_empty() {
        return Err(Error::input(format!("class {side}_{n} is empty")));
    }
    check_pair_cliques(l, side, n)?;
    if crossing_count(&prefix.edges, class) == 2
        && crossing_count(&prefix.edges, &l.outer(side, n)) == 2
    {
        return Ok(prefix.clone());
    }
    let g = l.full_graph();
    let order = cycle_order(&prefix.edges, prefix.center)?;

    // excursions (p, first, last, q) in traversal order; the center is not in the class
    let mut visits = Vec::new();
    let mut i = 0;
    while i < order.len() {
        if class.contains(&order[i]) {
            let start = i;
            while i + 1 < order.len() && class.contains(&order[i + 1]) {
                i += 1;
            }
            let q = order[(i + 1) % order.len()];
            visits.push((order[start - 1], order[start], order[i], q));
        }
        i += 1;
    }
    let mut reduced: EdgeSet = prefix
        .edges
        .iter()
        .copied()
        .filter(|e| !class.contains(&e.lo()) && !class.contains(&e.hi()))
        .collect();
    for &(p, _, _, q) in &visits {
        if p == q || !g.has_edge(p, q) || !reduced.insert(Edge::new(p, q)) {
            return Err(Error::structure(format!(
                "cannot shortcut the visit between {p} and {q}"
            )));
        }
    }

    let single = class.len() == 1;
    let mut slot = visits
        .iter()
        .find(|&&(_, f, t, _)| f != t || single)
        .map(|&(p, f, t, q)| (p, f, t, q));
    if slot.is_none() {
        let reduced_order = cycle_order(&reduced, prefix.center)?;
        let prev = l.class(side, n - 1);
        'outer: for j in 0..reduced_order.len() {
            let (p, q) = (
                reduced_order[j],
                reduced_order[(j + 1) % reduced_order.len()],
            );
            if !prev.contains(&p) || !prev.contains(&q) {
                continue;
            }
            for &w1 in class.iter().filter(|&&w| g.has_edge(p, w)) {
                if let Some(&w2) = class.iter().find(|&&w| w != w1 && g.has_edge(q, w)) {
                    slot = Some((p, w1, w2, q));
                    break 'outer;
                }
            }
        }
    }
    let (p, w1, w2, q) = slot.ok_or_else(|| {
        Error::structure(format!(
            "no place to reinsert class {side}_{n} as one visit"
        ))
    })?;
    reduced.remove(&Edge::new(p, q));
    let mut path = vec![p];
    path.extend(clique_path(w1, w2, class));
    path.push(q);
    reduced.extend(path.windows(2).map(|w| Edge::new(w[0], w[1])));

    let out = CyclePrefix::new(l, n, reduced, prefix.cases.clone());
    if !is_hamilton_cycle(&l.graph(n), &out.edges)
        || crossing_count(&out.edges, &l.outer(side, n)) != 2
    {
        return Err(Error::internal("normalization broke the cycle"));
    }
    Ok(out)
}

/// One step `D_n → D_{n+1}` on both sides.
pub fn extend_cycle(prefix: &CyclePrefix, l: &Layering) -> Result<CyclePrefix> {
    let n = prefix.depth;
    if n + 1 > l.depth {
        return Err(Error::input(format!("layering stops at depth {}", l.depth)));
    }
    if n < l.base() {
        return Err(Error::input(format!(
            "prefix depth {n} is below the base depth {}",
            l.base()
        )));
    }
    let mut edges = prefix.edges.clone();
    let mut cases = Vec::new();
    for side in [Side::R, Side::L] {
        if l.class(side, n + 1).is_empty() {
            if side == Side::R {
                return Err(Error::structure(format!("class R_{} is empty", n + 1)));
            }
            continue;
        }
        let case = extend_side(&mut edges, prefix.center, l, n, side)?;
        cases.push((side, case));
    }
    let out = CyclePrefix::new(l, n + 1, edges, cases);

    if !is_hamilton_cycle(&l.graph(n + 1), &out.edges) {
        return Err(Error::internal(format!(
            "extension to depth {} is not a Hamilton cycle",
            n + 1
        )));
    }
    let inner = l.vertices(n.saturating_sub(1));
    let restrict = |e: &EdgeSet| -> EdgeSet {
        e.iter()
            .copied()
            .filter(|e| inner.contains(&e.lo()) && inner.contains(&e.hi()))
            .collect()
    };
    if restrict(&out.edges) != restrict(&prefix.edges) {
        return Err(Error::internal("extension changed the inner window"));
    }
    for side in [Side::R, Side::L] {
        if l.class(side, n + 1).is_empty() {
            continue;
        }
        let at_n = crossing_count(&out.edges, l.class(side, n));
        let at_next = crossing_count(&out.edges, &l.outer(side, n + 1));
        if at_n != 4 || at_next != 2 {
            return Err(Error::internal(format!(
                "{side} side crossings after extension: {at_n} at class {n}, {at_next} beyond"
            )));
        }
    }
    Ok(out)
}

fn extend_side(
    edges: &mut EdgeSet,
    center: VertexId,
    l: &Layering,
    n: usize,
    side: Side,
) -> Result<ExtensionCase> {
    let g = l.full_graph();
    let cur = l.class(side, n);
    let next = l.class(side, n + 1);
    check_pair_cliques(l, side, n)?;
    check_pair_cliques(l, side, n + 1)?;
    if crossing_count(edges, &l.outer(side, n)) != 2 {
        return Err(Error::precondition(format!(
            "prefix is not normalized at {side}_{n}"
        )));
    }
    let order = cycle_order(edges, center)?;
    let first = order
        .iter()
        .position(|v| cur.contains(v))
        .ok_or_else(|| Error::internal("class not on cycle"))?;
    let mut last = first;
    while last + 1 < order.len() && cur.contains(&order[last + 1]) {
        last += 1;
    }
    let (v1, mut w1, w2) = (order[first - 1], order[first], order[last]);

    // lexicographically smallest pair of independent bridging edges
    let bridges: Vec<(VertexId, VertexId)> = cur
        .iter()
        .flat_map(|&a| {
            next.iter()
                .filter(move |&&b| g.has_edge(a, b))
                .map(move |&b| (a, b))
        })
        .collect();
    let pair = bridges
        .iter()
        .enumerate()
        .find_map(|(i, &(a1, b1))| {
            bridges[i + 1..]
                .iter()
                .find(|&&(a2, b2)| a1 != a2 && b1 != b2)
                .map(|&p2| ((a1, b1), p2))
        })
        .ok_or_else(|| {
            Error::Connectivity(format!(
                "no two independent edges between {side}_{n} and {side}_{}",
                n + 1
            ))
        })?;
    let ((mut a1, mut b1), (mut a2, mut b2)) = pair;

    let feet: BTreeSet<VertexId> = [w1, a1, a2, w2].into_iter().collect();
    let mut case = ExtensionCase::Direct;
    if feet.len() < 3 && cur.len() > 2 {
        if a2 == w1 {
            std::mem::swap(&mut a1, &mut a2);
            std::mem::swap(&mut b1, &mut b2);
        }
        let x = *cur.iter().find(|&&x| x != w1 && x != w2).unwrap();
        // {v1, w1, x, b1} is not an induced claw: v1x or xb1 is an edge
        if g.has_edge(v1, x) {
            edges.remove(&Edge::new(v1, w1));
            edges.insert(Edge::new(v1, x));
            w1 = x;
            case = ExtensionCase::MovedEntry;
        } else if g.has_edge(x, b1) {
            a1 = x;
            case = ExtensionCase::MovedFoot;
        } else {
            return Err(Error::structure(format!(
                "{v1} {w1} {x} {b1} induce a claw"
            )));
        }
    }

    let others_count = |a: VertexId, a2: VertexId| {
        cur.iter()
            .filter(|&&x| ![w1, w2, a, a2].contains(&x))
            .count()
    };
    let choice = [(a1, b1, a2, b2), (a2, b2, a1, b1)]
        .into_iter()
        .find(|&(a, _, a_, _)| {
            a != w2 && a_ != w1 && !(a == w1 && a_ == w2 && others_count(a, a_) > 0)
        })
        .ok_or_else(|| Error::internal("no admissible assignment of bridge feet"))?;
    let (a, b, a_, b_) = choice;

    let others: Vec<VertexId> = cur
        .iter()
        .copied()
        .filter(|x| ![w1, w2, a, a_].contains(x))
        .collect();
    let mut seq = vec![w1];
    let mut placed = false;
    if a != w1 {
        seq.extend(&others);
        seq.push(a);
        placed = true;
    }
    seq.extend(clique_path(b, b_, next));
    if a_ != w2 {
        seq.push(a_);
        if !placed {
            seq.extend(&others);
        }
    }
    seq.push(w2);

    edges.retain(|e| !(cur.contains(&e.lo()) && cur.contains(&e.hi())));
    edges.extend(seq.windows(2).map(|w| Edge::new(w[0], w[1])));
    Ok(case)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleCertificate {
    /// The family the certificate was built for, when known.
    pub family: Option<FamilySpec>,
    pub depth: usize,
    pub base: usize,
    pub separator: Vec<VertexId>,
    pub center: VertexId,
    /// `D_base, …, D_depth`.
    pub prefixes: Vec<CyclePrefix>,
    /// Edges of the last prefix with the depth from which they stay in
    /// every later prefix.
    pub stable_edges: BTreeMap<Edge, usize>,
}

pub(crate) fn stabilization_table(prefixes: &[CyclePrefix]) -> BTreeMap<Edge, usize> {
    let Some(last) = prefixes.last() else {
        return BTreeMap::new();
    };
    last.edges
        .iter()
        .map(|e| {
            let mut k = last.depth;
            for p in prefixes.iter().rev().skip(1) {
                if !p.edges.contains(e) {
                    break;
                }
                k = p.depth;
            }
            (*e, k)
        })
        .collect()
}

impl CircleCertificate {
    pub fn stable_edge_set(&self) -> EdgeSet {
        self.stable_edges.keys().copied().collect()
    }
}

/// Builds `D_base, …, D_depth` for a one- or two-ended graph.
pub fn build_circle_prefix(g: &LazyGraph, depth: usize) -> Result<CircleCertificate> {
    if !matches!(g.declared_ends, 1 | 2) {
        return Err(Error::precondition(
            "circle construction needs a one- or two-ended graph",
        ));
    }
    let l = Layering::for_graph(g, SeparatorPolicy::Lexicographic, depth)?;
    let base = l.base();
    if depth < base {
        return Err(Error::input(format!(
            "depth {depth} is below the base depth {base}"
        )));
    }
    l.check_cliques(1, depth + 1)?;
    let top = l.graph(depth);
    for pattern in [Pattern::Claw, Pattern::Net] {
        if let Some(m) = find_induced(&top, pattern) {
            return Err(Error::precondition(format!(
                "window G_{depth} contains an induced {m}"
            )));
        }
    }
    let c = finite_hamilton_cycle(&l.graph(base))?;
    let mut p = CyclePrefix::new(&l, base, c, Vec::new());
    for side in [Side::R, Side::L] {
        if !l.class(side, base).is_empty() {
            p = normalize_crossings(&p, &l, base, side)?;
        }
    }
    let mut prefixes = vec![p];
    for _ in base..depth {
        let next = extend_cycle(prefixes.last().unwrap(), &l)?;
        prefixes.push(next);
    }
    Ok(CircleCertificate {
        family: g.spec.clone(),
        depth,
        base,
        separator: l.separator.clone(),
        center: l.center,
        stable_edges: stabilization_table(&prefixes),
        prefixes,
    })
}

/// Random vertex-subset cuts probed by the verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutProbes {
    pub seed: u64,
    pub count: usize,
}

impl Default for CutProbes {
    fn default() -> Self {
        CutProbes {
            seed: 0,
            count: 128,
        }
    }
}

pub(crate) fn random_subsets(
    pool: &BTreeSet<VertexId>,
    probes: CutProbes,
) -> Vec<BTreeSet<VertexId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(probes.seed);
    let mut out = Vec::with_capacity(probes.count);
    while out.len() < probes.count && !pool.is_empty() {
        let x: BTreeSet<VertexId> = pool.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !x.is_empty() {
            out.push(x);
        }
    }
    out
}

pub fn verify_circle_certificate(
    cert: &CircleCertificate,
    g: &LazyGraph,
    probes: CutProbes,
) -> Verification {
    let mut rep = Verification::default();
    let m = cert.depth;
    let l = match Layering::build(g, &cert.separator, cert.center, &[], m) {
        Ok(l) => l,
        Err(e) => {
            rep.push("layering", false, e.to_string());
            return rep;
        }
    };
    rep.push(
        "layering",
        l.base() == cert.base,
        format!("base depth {} (certificate says {})", l.base(), cert.base),
    );

    let depths: Vec<usize> = cert.prefixes.iter().map(|p| p.depth).collect();
    let expected: Vec<usize> = (cert.base..=m).collect();
    rep.push("prefix-depths", depths == expected, format!("{depths:?}"));

    let bad_cycles: Vec<usize> = cert
        .prefixes
        .iter()
        .filter(|p| !is_hamilton_cycle(&l.graph(p.depth), &p.edges))
        .map(|p| p.depth)
        .collect();
    rep.push(
        "prefix-hamilton",
        bad_cycles.is_empty(),
        witness_list("not a Hamilton cycle of G_n at n =", &bad_cycles),
    );

    let bad_tables: Vec<usize> = cert
        .prefixes
        .iter()
        .filter(|p| crossing_table(&l, p.depth, &p.edges) != p.crossing_counts)
        .map(|p| p.depth)
        .collect();
    rep.push(
        "crossing-table",
        bad_tables.is_empty(),
        witness_list("recorded counts differ at n =", &bad_tables),
    );

    let stable = cert.stable_edge_set();
    let interior = l.vertices(m.saturating_sub(2));
    let deg = degrees(&stable);
    let bad_deg: Vec<VertexId> = interior
        .iter()
        .copied()
        .filter(|v| deg.get(v) != Some(&2))
        .collect();
    rep.push(
        "interior-degree",
        bad_deg.is_empty(),
        if bad_deg.is_empty() {
            format!("{} interior vertices have degree 2", interior.len())
        } else {
            witness_list("degree not 2 at", &bad_deg)
        },
    );

    let mut cuts: Vec<(String, BTreeSet<VertexId>)> = Vec::new();
    for n in cert.base..m {
        cuts.push((format!("V(G_{})", n - 1), l.vertices(n - 1)));
        for side in [Side::R, Side::L] {
            if !l.class(side, n).is_empty() {
                cuts.push((format!("{side}>={n}"), l.outer(side, n)));
            }
        }
    }
    let nested = cuts.len();
    for (i, x) in random_subsets(&interior, probes).into_iter().enumerate() {
        cuts.push((format!("random#{i}"), x));
    }
    let bad_cut = cuts.iter().find(|(_, x)| {
        let c = crossing_count(&stable, x);
        c == 0 || c % 2 == 1
    });
    rep.push(
        "cut-parity",
        bad_cut.is_none(),
        match bad_cut {
            None => format!(
                "{nested} nested and {} random cuts (seed {})",
                cuts.len() - nested,
                probes.seed
            ),
            Some((name, x)) => format!("cut {name} met {} times", crossing_count(&stable, x)),
        },
    );

    let mut bad_cross = Vec::new();
    for n in cert.base..m {
        for side in [Side::R, Side::L] {
            if !l.class(side, n).is_empty() {
                let c = crossing_count(&stable, &l.outer(side, n));
                if c != 2 {
                    bad_cross.push(format!("{side}>={n}:{c}"));
                }
            }
        }
    }
    rep.push(
        "crossing-counts",
        bad_cross.is_empty(),
        if bad_cross.is_empty() {
            "every stabilized end cut met twice".to_string()
        } else {
            bad_cross.join(" ")
        },
    );

    let mut bad_stab = Vec::new();
    for w in cert.prefixes.windows(2) {
        let inner = l.vertices(w[0].depth.saturating_sub(1));
        let restrict = |e: &EdgeSet| -> EdgeSet {
            e.iter()
                .copied()
                .filter(|e| inner.contains(&e.lo()) && inner.contains(&e.hi()))
                .collect()
        };
        if restrict(&w[0].edges) != restrict(&w[1].edges) {
            bad_stab.push(w[0].depth);
        }
    }
    rep.push(
        "stabilization",
        bad_stab.is_empty(),
        witness_list("D_{n+1} and D_n differ on G_{n-1} at n =", &bad_stab),
    );

    let table_ok = stabilization_table(&cert.prefixes) == cert.stable_edges;
    rep.push(
        "stable-table",
        table_ok,
        format!("{} stable edges", cert.stable_edges.len()),
    );
    rep
}

pub(crate) fn witness_list<T: fmt::Display>(what: &str, xs: &[T]) -> String {
    if xs.is_empty() {
        return "ok".to_string();
    }
    let items: Vec<String> = xs.iter().take(12).map(T::to_string).collect();
    format!("{what} {}", items.join(" "))
}

/// Used by tests and the demo: the cycle of `G_n` as a vertex sequence.
pub fn prefix_order(prefix: &CyclePrefix) -> Result<Vec<VertexId>> {
    cycle_order(&prefix.edges, prefix.center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::instantiate;
    use crate::graph::FiniteGraph;
    use crate::hamilton::cycle::edges_of_cycle;

    fn fam(spec: FamilySpec) -> LazyGraph {
        instantiate(&spec).unwrap()
    }

    /// 3-blow-up of P4: cliques A={0,1,2}, B={3,4,5}, C={6,7,8}, D={9,10,11}.
    fn p4_blowup() -> FiniteGraph {
        let mut g = FiniteGraph::new();
        for c in 0..4u32 {
            for a in 0..3 {
                for b in a + 1..3 {
                    g.add_edge(3 * c + a, 3 * c + b);
                }
                if c > 0 {
                    for b in 0..3 {
                        g.add_edge(3 * (c - 1) + a, 3 * c + b);
                    }
                }
            }
        }
        g
    }

    fn p4_layering() -> Layering {
        Layering::build(
            &LazyGraph::from_finite(p4_blowup(), 0),
            &[3, 4, 5],
            3,
            &[],
            2,
        )
        .unwrap()
    }

    #[test]
    fn zigzag_is_normalized() {
        let l = p4_layering();
        assert_eq!(l.class(Side::R, 2), &BTreeSet::from([9, 10, 11]));
        let zig = edges_of_cycle(&[0, 1, 2, 3, 6, 9, 7, 10, 11, 8, 4, 5]);
        let p = CyclePrefix::new(&l, 2, zig, Vec::new());
        assert_eq!(p.crossing_counts[&(Side::R, 2)], 4);
        let q = normalize_crossings(&p, &l, 2, Side::R).unwrap();
        assert_eq!(q.crossing_counts[&(Side::R, 2)], 2);
        assert!(is_hamilton_cycle(&l.graph(2), &q.edges));
        // edges away from C and D are untouched
        let away = |e: &EdgeSet| -> EdgeSet { e.iter().copied().filter(|e| e.hi() < 6).collect() };
        assert_eq!(away(&q.edges), away(&p.edges));
        assert_eq!(normalize_crossings(&q, &l, 2, Side::R).unwrap(), q);
    }

    #[test]
    fn normalize_rejects_inner_class() {
        let l = p4_layering();
        let p = CyclePrefix::new(
            &l,
            2,
            edges_of_cycle(&[0, 1, 2, 3, 6, 9, 7, 10, 11, 8, 4, 5]),
            Vec::new(),
        );
        assert!(matches!(
            normalize_crossings(&p, &l, 1, Side::R),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn double_ray_extension_keeps_counts() {
        let g = fam(FamilySpec::double_ray_blowup(2));
        let l = Layering::for_graph(&g, SeparatorPolicy::Lexicographic, 4).unwrap();
        let mut p = CyclePrefix::new(
            &l,
            2,
            finite_hamilton_cycle(&l.graph(2)).unwrap(),
            Vec::new(),
        );
        p = normalize_crossings(&p, &l, 2, Side::R).unwrap();
        p = normalize_crossings(&p, &l, 2, Side::L).unwrap();
        assert_eq!(p.crossing_counts[&(Side::L, 2)], 2);
        assert_eq!(p.crossing_counts[&(Side::R, 2)], 2);
        let p3 = extend_cycle(&p, &l).unwrap();
        let p4 = extend_cycle(&p3, &l).unwrap();
        for side in [Side::L, Side::R] {
            assert_eq!(crossing_count(&p4.edges, l.class(side, 3)), 4);
            assert_eq!(p4.crossing_counts[&(side, 4)], 2);
        }
    }

    /// Chain of cliques `A–S–C–D–E` where only the entry and exit of `D`
    /// reach `E`, so the first bridge pair lands on both of them.
    fn forced_case_two(with_entry_chord: bool) -> (Layering, CyclePrefix) {
        let mut g = FiniteGraph::new();
        let clique = |g: &mut FiniteGraph, xs: &[u32]| {
            for (i, &a) in xs.iter().enumerate() {
                for &b in &xs[i + 1..] {
                    g.add_edge(a, b);
                }
            }
        };
        let join = |g: &mut FiniteGraph, xs: &[u32], ys: &[u32]| {
            for &a in xs {
                for &b in ys {
                    g.add_edge(a, b);
                }
            }
        };
        let (a, s, c, d, e) = ([0, 1], [2, 3], [4, 5], [6, 7, 8], [9, 10]);
        for x in [&a[..], &s, &c, &d, &e] {
            clique(&mut g, x);
        }
        join(&mut g, &a, &s);
        join(&mut g, &s, &c);
        // the cycle enters D from 5 at 7 and leaves at 6 towards 4; 8 sees only 4 in C
        g.add_edge(4, 6);
        g.add_edge(5, 6);
        g.add_edge(5, 7);
        g.add_edge(4, 8);
        if with_entry_chord {
            g.add_edge(5, 8);
        }
        join(&mut g, &[6, 7], &e);
        if !with_entry_chord {
            g.add_edge(8, 10);
        }
        let l = Layering::build(&LazyGraph::from_finite(g, 0), &[2, 3], 2, &[], 3).unwrap();
        assert_eq!(l.class(Side::R, 2), &BTreeSet::from([6, 7, 8]));
        let cyc = edges_of_cycle(&[2, 4, 6, 8, 7, 5, 3, 1, 0]);
        (l.clone(), CyclePrefix::new(&l, 2, cyc, Vec::new()))
    }

    #[test]
    fn case_two_moves_entry_or_foot() {
        for chord in [true, false] {
            let (l, p) = forced_case_two(chord);
            assert_eq!(p.crossing_counts[&(Side::R, 2)], 2);
            let q = extend_cycle(&p, &l).unwrap();
            let expect = if chord {
                ExtensionCase::MovedEntry
            } else {
                ExtensionCase::MovedFoot
            };
            assert_eq!(q.cases, vec![(Side::R, expect)]);
            assert!(is_hamilton_cycle(&l.graph(3), &q.edges));
        }
    }

    #[test]
    fn circle_certificates_verify() {
        for spec in [FamilySpec::double_ray_blowup(2), FamilySpec::ray_blowup(3)] {
            let g = fam(spec);
            let cert = build_circle_prefix(&g, 8).unwrap();
            let rep = verify_circle_certificate(&cert, &g, CutProbes::default());
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn stable_edges_settle_early() {
        let g = fam(FamilySpec::double_ray_blowup(2));
        let cert = build_circle_prefix(&g, 10).unwrap();
        let l = Layering::build(&g, &cert.separator, cert.center, &[], 10).unwrap();
        let inner = l.vertices(7);
        for (e, &k) in &cert.stable_edges {
            if inner.contains(&e.lo()) && inner.contains(&e.hi()) {
                assert!(k <= 8, "{e} stabilized at {k}");
            }
        }
    }

    #[test]
    fn base_depth_gives_one_prefix() {
        let g = fam(FamilySpec::double_ray_blowup(3));
        let cert = build_circle_prefix(&g, 2).unwrap();
        assert_eq!(cert.prefixes.len(), 1);
        assert!(build_circle_prefix(&g, 1).is_err());
    }

    #[test]
    fn corruptions_are_caught() {
        let g = fam(FamilySpec::double_ray_blowup(2));
        let cert = build_circle_prefix(&g, 6).unwrap();
        let l = Layering::build(&g, &cert.separator, cert.center, &[], 6).unwrap();
        let inner = l.vertices(2);
        let e = *cert
            .stable_edges
            .keys()
            .find(|e| inner.contains(&e.lo()) && inner.contains(&e.hi()))
            .unwrap();
        let mut cut = cert.clone();
        cut.stable_edges.remove(&e);
        let rep = verify_circle_certificate(&cut, &g, CutProbes::default());
        assert!(rep.failed("interior-degree") && rep.failed("cut-parity"));

        let mut chord = cert.clone();
        let (a, b) = (
            cert.center,
            *l.class(Side::R, 1)
                .iter()
                .find(|&&b| !cert.stable_edges.contains_key(&Edge::new(cert.center, b)))
                .unwrap(),
        );
        chord.stable_edges.insert(Edge::new(a, b), 6);
        assert!(
            verify_circle_certificate(&chord, &g, CutProbes::default()).failed("interior-degree")
        );
    }

    #[test]
    fn ray_and_double_ray_have_no_circle() {
        for spec in [FamilySpec::ray_blowup(1), FamilySpec::double_ray_blowup(1)] {
            assert!(matches!(
                build_circle_prefix(&fam(spec), 6),
                Err(Error::Precondition(_))
            ));
        }
    }
}
