//! Edge-list text format.
//!
//! ```text
//! # optional comment lines
//! graph 4
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The header declares the vertex set `{0, …, n-1}`; each further line is one
//! undirected edge. Self-loops and repeated edges are rejected.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Edge, FiniteGraph, VertexId};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<FiniteGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::input("empty edge list"))?;
    let n: VertexId = header
        .strip_prefix("graph")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::input(format!("bad header {header:?}, expected `graph <n>`")))?;

    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(Error::input(format!(
                "line {lineno}: expected `u v`, got {line:?}"
            )));
        };
        let parse = |s: &str| {
            s.parse::<VertexId>()
                .map_err(|_| Error::input(format!("line {lineno}: bad vertex id {s:?}")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if u == v {
            return Err(Error::input(format!("line {lineno}: self-loop at {u}")));
        }
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "line {lineno}: vertex id out of range 0..{n}"
            )));
        }
        if !seen.insert(Edge::new(u, v)) {
            return Err(Error::input(format!(
                "line {lineno}: duplicate edge {u} {v}"
            )));
        }
        edges.push((u, v));
    }
    FiniteGraph::from_parts(0..n, edges)
}

/// Writes `g` in edge-list form. The vertex set must be `{0, …, n-1}`.
pub fn write_edge_list(g: &FiniteGraph, comment: Option<&str>) -> Result<String> {
    let n = g.order() as VertexId;
    if g.vertices().enumerate().any(|(i, v)| v != i as VertexId) {
        return Err(Error::input("edge-list output needs vertex ids 0..n-1"));
    }
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "# {line}").unwrap();
        }
    }
    writeln!(out, "graph {n}").unwrap();
    for e in g.edges() {
        writeln!(out, "{} {}", e.lo(), e.hi()).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_writes() {
        let text = "# a path\ngraph 4\n0 1\n1 2\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 3);
        assert_eq!(write_edge_list(&g, Some("a path")).unwrap(), text);
    }

    #[test]
    fn isolated_vertices_come_from_header() {
        let g = parse_edge_list("graph 3\n0 1\n").unwrap();
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_edge_list("graph 3\n1 1\n").is_err());
        assert!(parse_edge_list("graph 3\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("graph 2\n0 5\n").is_err());
        assert!(parse_edge_list("grph 2\n").is_err());
        assert!(parse_edge_list("graph 2\n0\n").is_err());
        assert!(parse_edge_list("").is_err());
    }
}
