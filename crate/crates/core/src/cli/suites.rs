//! Named bundles of checks, one per structural claim.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::RunReport;
use crate::detect::{
    check_relaxed_bull_condition_in_window, find_induced, is_bull_free, is_claw_free, Pattern,
};
use crate::error::{Error, Result};
use crate::families::{catalog, instantiate, window, FamilySpec, LazyGraph};
use crate::graph::{is_k_connected, FiniteGraph};
use crate::hamilton::{
    build_circle_prefix, leaf_tree, spanning_ray_or_double_ray, verify_circle_certificate,
    verify_spanning_path, verify_tree_certificate, CutProbes, EndLabel, LeafSpec, SpanningKind,
};
use crate::oracle::{generate_corpus, Filter};
use crate::structure::{
    check_shepherd_characterization, default_size_cap, end_bound_suite, separator_clique_check,
};

pub const NAMES: [&str; 6] = [
    "shep-2.9.1",
    "shep-2.9.2",
    "shep-2.9.3",
    "shep-2.1",
    "bullreduct",
    "two-ends",
];

const DEPTH: usize = 12;

pub fn run_suite(name: &str, seed: u64, r: &mut RunReport) -> Result<()> {
    match name {
        "shep-2.9.1" => spanning(r),
        "shep-2.9.2" => circles(seed, r),
        "shep-2.9.3" => leaf_trees(seed, r),
        "shep-2.1" => shepherd(r),
        "bullreduct" => bull_reduction(r),
        "two-ends" => two_ends(r),
        _ => Err(Error::input(format!(
            "unknown suite {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

fn fam(spec: &FamilySpec) -> Result<LazyGraph> {
    instantiate(spec)
}

fn spanning(r: &mut RunReport) -> Result<()> {
    for spec in catalog() {
        let g = fam(&spec)?;
        let name = format!("spanning:{}", spec.name());
        match spanning_ray_or_double_ray(&g, DEPTH) {
            Ok(sp) => {
                let v = verify_spanning_path(&sp, &g);
                let want = if g.declared_ends == 2 {
                    SpanningKind::DoubleRay
                } else {
                    SpanningKind::Ray
                };
                let detail = format!(
                    "{} via {} case; {}",
                    sp.kind.as_str(),
                    sp.case,
                    summary(&v.to_string())
                );
                r.check(name, Some(DEPTH), v.passed() && sp.kind == want, detail);
            }
            Err(e) => r.error(name, Some(DEPTH), &e),
        }
    }
    Ok(())
}

/// First failing line of a verifier listing, or a count of passes.
fn summary(listing: &str) -> String {
    match listing.lines().find(|l| l.starts_with("FAIL")) {
        Some(l) => l.to_string(),
        None => format!("{} checks pass", listing.lines().count()),
    }
}

fn circles(seed: u64, r: &mut RunReport) -> Result<()> {
    let probes = CutProbes { seed, count: 128 };
    for spec in catalog() {
        let g = fam(&spec)?;
        let name = format!("circle:{}", spec.name());
        match build_circle_prefix(&g, DEPTH) {
            Ok(cert) => {
                let v = verify_circle_certificate(&cert, &g, probes);
                r.check(name, Some(DEPTH), v.passed(), summary(&v.to_string()));
            }
            // a ray or double ray is not 2-connected and has no Hamilton circle
            Err(e @ Error::Precondition(_)) if spec.k == 1 => {
                r.check(name, Some(DEPTH), true, format!("refused as expected: {e}"))
            }
            Err(e) => r.error(name, Some(DEPTH), &e),
        }
    }
    Ok(())
}

/// Leaf sets drawn from the vertices near the root and both end labels.
fn sample_leaf_sets(
    g: &LazyGraph,
    size: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<LeafSpec>>> {
    let mut pool: Vec<LeafSpec> = window(g, 1)?
        .graph
        .vertices()
        .map(LeafSpec::Vertex)
        .collect();
    pool.push(LeafSpec::End(EndLabel::W1));
    if g.declared_ends == 2 {
        pool.push(LeafSpec::End(EndLabel::W2));
    }
    let mut out: Vec<Vec<LeafSpec>> = Vec::new();
    let mut seen = BTreeSet::new();
    while out.len() < count {
        let mut pick: Vec<LeafSpec> = pool.choose_multiple(rng, size).copied().collect();
        pick.sort();
        if seen.insert(pick.clone()) {
            out.push(pick);
        }
    }
    Ok(out)
}

fn leaf_label(leaves: &[LeafSpec]) -> String {
    leaves
        .iter()
        .map(LeafSpec::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn leaf_trees(seed: u64, r: &mut RunReport) -> Result<()> {
    const TREE_DEPTH: usize = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = CutProbes { seed, count: 128 };
    let plan = [(3u32, 2usize, 6usize), (5, 3, 3), (5, 4, 3)];
    for (k, size, count) in plan {
        let spec = FamilySpec::double_ray_blowup(k);
        let g = fam(&spec)?;
        for leaves in sample_leaf_sets(&g, size, count, &mut rng)? {
            let name = format!("leaftree:{}:{}", spec.name(), leaf_label(&leaves));
            match leaf_tree(&g, &leaves, TREE_DEPTH) {
                Ok(cert) => {
                    let v = verify_tree_certificate(&cert, &g, probes);
                    r.check(name, Some(TREE_DEPTH), v.passed(), summary(&v.to_string()));
                }
                Err(e) => r.error(name, Some(TREE_DEPTH), &e),
            }
        }
    }
    // too many leaves for the connectivity: refused, and the window agrees
    let spec = FamilySpec::double_ray_blowup(3);
    let g = fam(&spec)?;
    let w = window(&g, TREE_DEPTH)?;
    for size in [3, 4] {
        for leaves in sample_leaf_sets(&g, size, 2, &mut rng)? {
            let name = format!("leaftree-refused:{}:{}", spec.name(), leaf_label(&leaves));
            let connected = is_k_connected(&w.graph, size + 1)?;
            match leaf_tree(&g, &leaves, TREE_DEPTH) {
                Err(Error::Precondition(m)) => r.check(
                    name,
                    Some(TREE_DEPTH),
                    !connected,
                    format!("refused: {m}; window {}-connected: {connected}", size + 1),
                ),
                Ok(_) => r.check(
                    name,
                    Some(TREE_DEPTH),
                    false,
                    "built a tree despite missing connectivity",
                ),
                Err(e) => r.error(name, Some(TREE_DEPTH), &e),
            }
        }
    }
    Ok(())
}

fn shepherd(r: &mut RunReport) -> Result<()> {
    let forward = generate_corpus(&Filter::parse("claw-free,net-free")?, 6, 0, usize::MAX)?;
    let mut bad = Vec::new();
    for (g, p) in forward.iter() {
        if !check_shepherd_characterization(g, g.order())?.holds {
            bad.push(p.to_string());
        }
    }
    r.check(
        "shepherd-forward",
        None,
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} claw-free net-free graphs", forward.len())
        } else {
            bad.join("; ")
        },
    );

    let mut witnesses = 0;
    let mut missing = Vec::new();
    for filter in ["!claw-free", "claw-free,!net-free"] {
        let c = generate_corpus(&Filter::parse(filter)?, 6, 0, usize::MAX)?;
        for (g, p) in c.iter() {
            match check_shepherd_characterization(g, g.order())?.witness {
                Some(_) => witnesses += 1,
                None => missing.push(p.to_string()),
            }
        }
    }
    r.check(
        "shepherd-converse",
        None,
        missing.is_empty() && witnesses >= 50,
        if missing.is_empty() {
            format!("{witnesses} graphs with a claw or net have a witness")
        } else {
            missing.join("; ")
        },
    );
    Ok(())
}

/// Bull, plus a vertex adjacent to exactly the two horns.
pub(crate) fn horned_bull() -> FiniteGraph {
    FiniteGraph::from_edges([(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (3, 5), (4, 5)])
        .expect("static edge list")
}

fn bull_reduction(r: &mut RunReport) -> Result<()> {
    for spec in catalog() {
        let g = fam(&spec)?;
        let mut bad = Vec::new();
        let mut covered = 0;
        for depth in 1..=10 {
            let w = window(&g, depth)?;
            if is_claw_free(&w.graph) && check_relaxed_bull_condition_in_window(&w).holds {
                covered += 1;
                if !is_bull_free(&w.graph) {
                    bad.push(depth);
                }
            }
        }
        r.check(
            format!("bull-coincidence:{}", spec.name()),
            Some(10),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{covered} qualifying windows are bull-free")
            } else {
                format!("bull in windows {bad:?}")
            },
        );
    }
    let h = horned_bull();
    let relaxed = crate::detect::check_relaxed_bull_condition(&h).holds;
    let bull = find_induced(&h, Pattern::Bull);
    r.check(
        "bull-separation",
        None,
        relaxed && bull.is_some(),
        match bull {
            Some(m) => format!("relaxed condition holds: {relaxed}; contains {m}"),
            None => "no bull found".to_string(),
        },
    );
    Ok(())
}

fn two_ends(r: &mut RunReport) -> Result<()> {
    for spec in catalog() {
        let g = fam(&spec)?;
        let name = format!("end-bound:{}", spec.name());
        match end_bound_suite(&g, 8) {
            Ok(rep) => {
                let ok = rep.ok()
                    && matches!(rep.end_count, 1 | 2)
                    && rep.end_count == g.declared_ends as usize;
                let dist = rep
                    .max_distance_from_ray
                    .map_or("-".to_string(), |d| d.to_string());
                let detail = format!(
                    "ends {} implication {} distance-to-ray {dist}",
                    rep.end_count,
                    rep.implication.as_str()
                );
                r.check(name, Some(8), ok, detail);
            }
            Err(e) => r.error(name, Some(8), &e),
        }
        let w = window(&g, 5)?;
        if is_claw_free(&w.graph) && is_bull_free(&w.graph) {
            let rep = separator_clique_check(&w.graph, default_size_cap(&w.graph))?;
            r.check(
                format!("separator-clique:{}", spec.name()),
                Some(5),
                rep.holds,
                match rep.witness {
                    Some(s) => format!("separator {s:?} is not a clique"),
                    None => format!("{} separators are cliques", rep.separators_checked),
                },
            );
        }
    }
    Ok(())
}
