//! Versioned text form of circle and tree certificates.
//!
//! ```text
//! clawnet-circle-certificate v1
//! depth 4
//! base 2
//! separator 0 1
//! center 0
//! family-begin
//! kind=double_ray_blowup
//! k=2
//! family-end
//! prefix 2
//! edges 0-1 0-2 …
//! crossings L:2=2 R:2=2
//! cases
//! prefix 3
//! …
//! stable
//! 0-1 3
//! …
//! ```
//!
//! A tree certificate replaces the prefix and stable sections by `leaves`,
//! `tree` and one `ray <end> <vertices…>` line per ray. Writing is
//! canonical, so `write(parse(text)) == text` for any written certificate.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::circle::{
    verify_circle_certificate, CircleCertificate, CutProbes, CyclePrefix, ExtensionCase,
};
use super::cycle::EdgeSet;
use super::layers::Side;
use super::leaf_tree::{
    verify_tree_certificate, EndLabel, LeafSpec, RayExtension, TreeCertificate,
};
use super::report::Verification;
use crate::error::{Error, Result};
use crate::families::{instantiate, parse_family, write_family, FamilySpec};
use crate::graph::{Edge, VertexId};

const CIRCLE_HEADER: &str = "clawnet-circle-certificate v1";
const TREE_HEADER: &str = "clawnet-tree-certificate v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Circle(CircleCertificate),
    Tree(TreeCertificate),
}

impl Certificate {
    pub fn family(&self) -> Option<&FamilySpec> {
        match self {
            Certificate::Circle(c) => c.family.as_ref(),
            Certificate::Tree(t) => t.family.as_ref(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Certificate::Circle(c) => write_circle_certificate(c),
            Certificate::Tree(t) => write_tree_certificate(t),
        }
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        match text.lines().next().map(str::trim) {
            Some(CIRCLE_HEADER) => parse_circle_certificate(text).map(Certificate::Circle),
            Some(TREE_HEADER) => parse_tree_certificate(text).map(Certificate::Tree),
            Some(other) => Err(Error::input(format!(
                "unknown certificate header {other:?}"
            ))),
            None => Err(Error::input("empty certificate")),
        }
    }

    /// Rebuilds the family named inside the certificate and runs its verifier.
    pub fn verify(&self, probes: CutProbes) -> Result<Verification> {
        let spec = self
            .family()
            .ok_or_else(|| Error::input("certificate names no family"))?;
        let g = instantiate(spec)?;
        Ok(match self {
            Certificate::Circle(c) => verify_circle_certificate(c, &g, probes),
            Certificate::Tree(t) => verify_tree_certificate(t, &g, probes),
        })
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_head(
    out: &mut String,
    header: &str,
    depth: usize,
    base: usize,
    sep: &[VertexId],
    center: VertexId,
    family: Option<&FamilySpec>,
) {
    writeln!(
        out,
        "{header}\ndepth {depth}\nbase {base}\nseparator {}\ncenter {center}",
        join(sep)
    )
    .unwrap();
    match family {
        Some(f) => {
            out.push_str("family-begin\n");
            out.push_str(&write_family(f));
            out.push_str("family-end\n");
        }
        None => out.push_str("family none\n"),
    }
}

pub fn write_circle_certificate(c: &CircleCertificate) -> String {
    let mut out = String::new();
    write_head(
        &mut out,
        CIRCLE_HEADER,
        c.depth,
        c.base,
        &c.separator,
        c.center,
        c.family.as_ref(),
    );
    for p in &c.prefixes {
        writeln!(out, "prefix {}", p.depth).unwrap();
        writeln!(out, "edges {}", join(&p.edges)).unwrap();
        let crossings = p
            .crossing_counts
            .iter()
            .map(|((side, n), k)| format!("{side}:{n}={k}"));
        writeln!(out, "crossings {}", join(crossings)).unwrap();
        let cases = p
            .cases
            .iter()
            .map(|(side, case)| format!("{side}:{}", case.as_str()));
        writeln!(out, "cases {}", join(cases)).unwrap();
    }
    out.push_str("stable\n");
    for (e, n) in &c.stable_edges {
        writeln!(out, "{e} {n}").unwrap();
    }
    out
}

pub fn write_tree_certificate(t: &TreeCertificate) -> String {
    let mut out = String::new();
    write_head(
        &mut out,
        TREE_HEADER,
        t.depth,
        t.base,
        &t.separator,
        t.center,
        t.family.as_ref(),
    );
    let leaves: Vec<String> = t
        .prescribed_leaves
        .iter()
        .map(LeafSpec::to_string)
        .collect();
    writeln!(out, "leaves {}", leaves.join(",")).unwrap();
    writeln!(out, "tree {}", join(&t.finite_tree)).unwrap();
    for r in &t.ray_extensions {
        writeln!(out, "ray {} {}", r.end, join(&r.path)).unwrap();
    }
    out
}

/// Line reader that reports positions in its errors.
struct Lines<'a> {
    lines: Vec<&'a str>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().collect(),
            at: 0,
        }
    }

    fn err(&self, m: impl std::fmt::Display) -> Error {
        Error::input(format!("certificate line {}: {m}", self.at))
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.at).copied()
    }

    fn next(&mut self) -> Result<&'a str> {
        let l = self
            .peek()
            .ok_or_else(|| Error::input("certificate ends early"))?;
        self.at += 1;
        Ok(l)
    }

    /// The rest of a line starting with `key`, without the key.
    fn field(&mut self, key: &str) -> Result<&'a str> {
        let l = self.next()?;
        match l.split_once(' ') {
            Some((k, rest)) if k == key => Ok(rest),
            None if l == key => Ok(""),
            _ => Err(self.err(format!("expected `{key}`"))),
        }
    }

    fn number<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("bad number {s:?}")))
    }

    fn numbers<T: std::str::FromStr>(&self, s: &str) -> Result<Vec<T>> {
        s.split_whitespace().map(|x| self.number(x)).collect()
    }

    fn edge(&self, s: &str) -> Result<Edge> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| self.err(format!("bad edge {s:?}")))?;
        let (a, b): (VertexId, VertexId) = (self.number(a)?, self.number(b)?);
        if a >= b {
            return Err(self.err(format!("edge {s:?} is not written low-high")));
        }
        Ok(Edge::new(a, b))
    }

    fn edges(&self, s: &str) -> Result<EdgeSet> {
        s.split_whitespace().map(|x| self.edge(x)).collect()
    }
}

struct Head {
    depth: usize,
    base: usize,
    separator: Vec<VertexId>,
    center: VertexId,
    family: Option<FamilySpec>,
}

fn read_head(r: &mut Lines, header: &str) -> Result<Head> {
    if r.next()? != header {
        return Err(r.err(format!("expected `{header}`")));
    }
    let depth = {
        let f = r.field("depth")?;
        r.number(f)?
    };
    let base = {
        let f = r.field("base")?;
        r.number(f)?
    };
    let separator = {
        let f = r.field("separator")?;
        r.numbers(f)?
    };
    let center = {
        let f = r.field("center")?;
        r.number(f)?
    };
    let family = match r.next()? {
        "family none" => None,
        "family-begin" => {
            let mut body = String::new();
            loop {
                let l = r.next()?;
                if l == "family-end" {
                    break;
                }
                body.push_str(l);
                body.push('\n');
            }
            Some(parse_family(&body)?)
        }
        _ => return Err(r.err("expected a family block")),
    };
    Ok(Head {
        depth,
        base,
        separator,
        center,
        family,
    })
}

pub fn parse_circle_certificate(text: &str) -> Result<CircleCertificate> {
    let mut r = Lines::new(text);
    let h = read_head(&mut r, CIRCLE_HEADER)?;
    let mut prefixes = Vec::new();
    while r.peek().is_some_and(|l| l.starts_with("prefix")) {
        let depth = {
            let f = r.field("prefix")?;
            r.number(f)?
        };
        let edges = {
            let f = r.field("edges")?;
            r.edges(f)?
        };
        let mut crossing_counts = BTreeMap::new();
        for item in r.field("crossings")?.split_whitespace() {
            let parsed = item.split_once(':').and_then(|(s, rest)| {
                let (n, k) = rest.split_once('=')?;
                Some((Side::parse(s)?, n.parse().ok()?, k.parse().ok()?))
            });
            let (side, n, k) =
                parsed.ok_or_else(|| r.err(format!("bad crossing entry {item:?}")))?;
            crossing_counts.insert((side, n), k);
        }
        let mut cases = Vec::new();
        for item in r.field("cases")?.split_whitespace() {
            let parsed = item
                .split_once(':')
                .and_then(|(s, c)| Some((Side::parse(s)?, ExtensionCase::parse(c)?)));
            cases.push(parsed.ok_or_else(|| r.err(format!("bad case entry {item:?}")))?);
        }
        prefixes.push(CyclePrefix {
            depth,
            edges,
            separator: h.separator.clone(),
            center: h.center,
            crossing_counts,
            cases,
        });
    }
    if r.next()? != "stable" {
        return Err(r.err("expected `stable`"));
    }
    let mut stable_edges = BTreeMap::new();
    while let Some(l) = r.peek() {
        r.at += 1;
        let (e, n) = l
            .split_once(' ')
            .ok_or_else(|| r.err("expected `edge depth`"))?;
        stable_edges.insert(r.edge(e)?, r.number(n)?);
    }
    Ok(CircleCertificate {
        family: h.family,
        depth: h.depth,
        base: h.base,
        separator: h.separator,
        center: h.center,
        prefixes,
        stable_edges,
    })
}

pub fn parse_tree_certificate(text: &str) -> Result<TreeCertificate> {
    let mut r = Lines::new(text);
    let h = read_head(&mut r, TREE_HEADER)?;
    let prescribed_leaves = LeafSpec::parse_list(r.field("leaves")?)?;
    let finite_tree = {
        let f = r.field("tree")?;
        r.edges(f)?
    };
    let mut ray_extensions = Vec::new();
    while r.peek().is_some() {
        let rest = r.field("ray")?;
        let (end, path) = rest.split_once(' ').unwrap_or((rest, ""));
        let end = EndLabel::parse(end).ok_or_else(|| r.err(format!("bad end label {end:?}")))?;
        ray_extensions.push(RayExtension {
            end,
            path: r.numbers(path)?,
        });
    }
    Ok(TreeCertificate {
        family: h.family,
        depth: h.depth,
        base: h.base,
        separator: h.separator,
        center: h.center,
        finite_tree,
        prescribed_leaves,
        ray_extensions,
    })
}
