use std::collections::BTreeSet;

use proptest::prelude::*;

use clawnet::cli::{ReportEntry, RunReport};
use clawnet::detect::{find_induced, is_claw_free, is_net_free, Pattern};
use clawnet::families::{instantiate, window, FamilySpec};
use clawnet::graph::{
    components, is_connected, is_k_connected, minimal_separators, parse_edge_list, write_edge_list,
    FiniteGraph, VertexId,
};
use clawnet::hamilton::{
    build_circle_prefix, finite_hamilton_cycle, is_hamilton_cycle, Certificate, CutProbes,
};
use clawnet::oracle::{brute_hamilton_cycle, brute_hamilton_path, exhaustive_connected};

/// A graph on `0..n` from a bitmask over vertex pairs.
fn graph(n: u32, mask: u64) -> FiniteGraph {
    let mut g = FiniteGraph::new();
    let mut bit = 0;
    for v in 0..n {
        g.add_vertex(v);
    }
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

fn arb_graph(max_n: u32) -> impl Strategy<Value = FiniteGraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, m)| graph(n, m))
}

fn relabel(g: &FiniteGraph, perm: &[VertexId]) -> FiniteGraph {
    let mut h = FiniteGraph::new();
    for v in g.vertices() {
        h.add_vertex(perm[v as usize]);
    }
    for e in g.edges() {
        h.add_edge(perm[e.lo() as usize], perm[e.hi() as usize]);
    }
    h
}

/// Edge density about 3/4, where most graphs are 2-connected.
fn arb_dense_graph(max_n: u32) -> impl Strategy<Value = FiniteGraph> {
    (3..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, a, b)| graph(n, a | b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_lists_round_trip(g in arb_graph(9)) {
        let text = write_edge_list(&g, Some("prop")).unwrap();
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn detection_ignores_labels(g in arb_graph(8), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        for p in Pattern::ALL {
            let (a, b) = (find_induced(&g, p), find_induced(&h, p));
            prop_assert_eq!(a.is_some(), b.is_some());
            if let Some(m) = a {
                prop_assert!(m.verify(&g));
            }
        }
    }

    #[test]
    fn connectivity_is_monotone(g in arb_graph(8)) {
        let mut prev = true;
        for k in 1..=g.order() {
            let now = is_k_connected(&g, k).unwrap();
            prop_assert!(prev || !now, "{k}-connected but not {}-connected", k - 1);
            prev = now;
        }
        prop_assert_eq!(is_k_connected(&g, 1).unwrap(), is_connected(&g) && g.order() > 1);
    }

    #[test]
    fn minimal_separators_separate_minimally(g in arb_graph(8)) {
        prop_assume!(is_connected(&g));
        for s in minimal_separators(&g, g.order()).unwrap() {
            let set: BTreeSet<VertexId> = s.vertices.iter().copied().collect();
            let rest = g.without(&set);
            let comps = components(&rest);
            // at least two components are full: every vertex of S has a neighbour in them
            let full = comps
                .iter()
                .filter(|c| set.iter().all(|&x| g.neighbors(x).iter().any(|w| c.contains(w))))
                .count();
            prop_assert!(full >= 2, "{:?} is not a minimal separator", s.vertices);
        }
    }

    #[test]
    fn two_connected_claw_net_free_graphs_are_hamiltonian(g in arb_dense_graph(9)) {
        prop_assume!(g.order() >= 3 && is_k_connected(&g, 2).unwrap());
        prop_assume!(is_claw_free(&g) && is_net_free(&g));
        let c = finite_hamilton_cycle(&g).unwrap();
        prop_assert!(is_hamilton_cycle(&g, &c));
    }

    #[test]
    fn hamilton_cycle_implies_path(g in arb_graph(8)) {
        if brute_hamilton_cycle(&g).unwrap().is_some() {
            prop_assert!(brute_hamilton_path(&g, None).unwrap().is_some());
        }
    }

    #[test]
    fn window_classes_are_layers(k in 1u32..=4, two in any::<bool>(), depth in 1usize..=8) {
        let spec = if two { FamilySpec::double_ray_blowup(k) } else { FamilySpec::ray_blowup(k) };
        let w = window(&instantiate(&spec).unwrap(), depth).unwrap();
        for (i, class) in w.classes.iter().enumerate() {
            for &v in class {
                for &x in w.graph.neighbors(v) {
                    let j = w.classes.iter().position(|c| c.contains(&x)).unwrap();
                    prop_assert!(j + 1 >= i && j <= i + 1);
                }
            }
        }
    }

    #[test]
    fn circle_certificates_round_trip(k in 2u32..=4, two in any::<bool>(), depth in 4usize..=9, seed in any::<u64>()) {
        let spec = if two { FamilySpec::double_ray_blowup(k) } else { FamilySpec::ray_blowup(k) };
        let g = instantiate(&spec).unwrap();
        let cert = Certificate::Circle(build_circle_prefix(&g, depth).unwrap());
        let text = cert.to_text();
        let back = Certificate::parse(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.to_text(), text);
        let probes = CutProbes { seed, count: 32 };
        prop_assert!(back.verify(probes).unwrap().passed());
    }

    #[test]
    fn reports_round_trip(
        seed in any::<u64>(),
        entries in prop::collection::vec(("[a-z][a-z0-9:-]{0,12}", prop::option::of(0usize..100), any::<bool>(), "[ -~]{1,30}"), 0..6),
        outputs in prop::collection::vec("[ -~]{0,30}", 0..4),
    ) {
        let mut r = RunReport { command: vec!["suite".into(), "two-ends".into()], seed, ..Default::default() };
        for (name, depth, passed, detail) in entries {
            r.check(name, depth, passed, detail.trim().to_string());
        }
        r.output = outputs.into_iter().map(|o| o.trim().to_string()).collect();
        let back = RunReport::parse(&r.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), r.to_string());
        prop_assert!(back.entries.iter().all(|e: &ReportEntry| e.passed || !e.detail.is_empty()));
    }
}

#[test]
fn seven_vertex_connected_graphs() {
    // number of connected graphs on 1..=7 unlabelled vertices
    let counts: Vec<usize> = (1..=7)
        .map(|n| exhaustive_connected(n).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
}
