//! Browser bindings for the demo page in `www/`. Each export takes plain
//! values and returns a JSON string, so the page needs no generated types.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use clawnet::detect::{find_induced, Pattern};
use clawnet::families::{instantiate, window, FamilySpec, LazyGraph};
use clawnet::graph::parse_edge_list;
use clawnet::hamilton::{build_circle_prefix, verify_circle_certificate, CutProbes};

/// Deepest window the page may request; the layout gets unreadable beyond it.
pub const MAX_DEPTH: usize = 16;

fn family(kind: &str, k: u32) -> Result<LazyGraph, String> {
    if !(1..=6).contains(&k) {
        return Err(format!("k must lie in 1..=6, got {k}"));
    }
    let spec = match kind {
        "ray" => FamilySpec::ray_blowup(k),
        "double_ray" => FamilySpec::double_ray_blowup(k),
        _ => {
            return Err(format!(
                "unknown family {kind:?}; expected ray or double_ray"
            ))
        }
    };
    instantiate(&spec).map_err(|e| e.to_string())
}

fn check_depth(depth: usize) -> Result<usize, String> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(format!("depth must lie in 1..={MAX_DEPTH}"));
    }
    Ok(depth)
}

/// Vertices with drawing positions (cell, slot) and the edges of `G_depth`.
pub fn window_json(kind: &str, k: u32, depth: usize) -> Result<Value, String> {
    let g = family(kind, k)?;
    let w = window(&g, check_depth(depth)?).map_err(|e| e.to_string())?;
    let vertices: Vec<Value> = w
        .graph
        .vertices()
        .map(|v| {
            let (cell, slot) = g.layout(v).unwrap_or((0, 0));
            json!({ "id": v, "cell": cell, "slot": slot, "dist": w.distance(v) })
        })
        .collect();
    let edges: Vec<[u32; 2]> = w.graph.edges().map(|e| [e.lo(), e.hi()]).collect();
    Ok(json!({ "vertices": vertices, "edges": edges, "ends": g.declared_ends }))
}

/// Stable edges of the Hamilton circle prefix and the verifier's verdicts.
pub fn circle_json(kind: &str, k: u32, depth: usize, seed: u64) -> Result<Value, String> {
    let g = family(kind, k)?;
    let cert = build_circle_prefix(&g, check_depth(depth)?).map_err(|e| e.to_string())?;
    let v = verify_circle_certificate(&cert, &g, CutProbes { seed, count: 64 });
    let edges: Vec<Value> = cert
        .stable_edges
        .iter()
        .map(|(e, since)| json!({ "u": e.lo(), "v": e.hi(), "since": since }))
        .collect();
    let checks: Vec<Value> = v
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    Ok(
        json!({ "base": cert.base, "depth": cert.depth, "edges": edges, "checks": checks, "passed": v.passed() }),
    )
}

/// Induced claw, net or bull in a pasted edge list.
pub fn detect_json(edge_list: &str, pattern: &str) -> Result<Value, String> {
    let g = parse_edge_list(edge_list).map_err(|e| e.to_string())?;
    let patterns = match pattern {
        "all" => Pattern::ALL.to_vec(),
        p => vec![Pattern::parse(p).ok_or_else(|| format!("unknown pattern {p:?}"))?],
    };
    let hits: Vec<Value> = patterns
        .into_iter()
        .map(|p| match find_induced(&g, p) {
            Some(m) => json!({ "pattern": p.as_str(), "found": true, "vertices": m.vertex_map }),
            None => json!({ "pattern": p.as_str(), "found": false }),
        })
        .collect();
    Ok(json!({ "order": g.order(), "size": g.size(), "results": hits }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn family_window(kind: &str, k: u32, depth: usize) -> Result<String, JsValue> {
    to_js(window_json(kind, k, depth))
}

#[wasm_bindgen]
pub fn circle_prefix(kind: &str, k: u32, depth: usize, seed: u32) -> Result<String, JsValue> {
    to_js(circle_json(kind, k, depth, u64::from(seed)))
}

#[wasm_bindgen]
pub fn detect(edge_list: &str, pattern: &str) -> Result<String, JsValue> {
    to_js(detect_json(edge_list, pattern))
}
