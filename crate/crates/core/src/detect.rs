//! Induced claws, nets and bulls.

use std::fmt;

use crate::families::Window;
use crate::graph::{Dense, FiniteGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Claw,
    Net,
    Bull,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::Claw, Pattern::Net, Pattern::Bull];

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::Claw => "claw",
            Pattern::Net => "net",
            Pattern::Bull => "bull",
        }
    }

    pub fn parse(s: &str) -> Option<Pattern> {
        Pattern::ALL.into_iter().find(|p| p.as_str() == s)
    }

    pub fn order(self) -> usize {
        match self {
            Pattern::Claw => 4,
            Pattern::Net => 6,
            Pattern::Bull => 5,
        }
    }

    /// Edges between role positions. Role order: claw = center, three
    /// leaves; net = triangle `a1 a2 z`, then the pendants of `a1`, `a2`,
    /// `z`; bull = `a1 a2 z`, horn on `a1`, horn on `a2`.
    pub fn template(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::Claw => &[(0, 1), (0, 2), (0, 3)],
            Pattern::Net => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)],
            Pattern::Bull => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)],
        }
    }

    fn adjacent(self, i: usize, j: usize) -> bool {
        self.template()
            .iter()
            .any(|&(a, b)| (a, b) == (i, j) || (b, a) == (i, j))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternMatch {
    pub pattern: Pattern,
    pub vertex_map: Vec<VertexId>,
}

impl PatternMatch {
    /// Re-checks every edge and non-edge of the template in `g`.
    pub fn verify(&self, g: &FiniteGraph) -> bool {
        let m = &self.vertex_map;
        let n = self.pattern.order();
        m.len() == n
            && m.iter().all(|&v| g.contains(v))
            && (0..n).all(|i| {
                (i + 1..n)
                    .all(|j| m[i] != m[j] && g.has_edge(m[i], m[j]) == self.pattern.adjacent(i, j))
            })
    }
}

impl fmt::Display for PatternMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern)?;
        for v in &self.vertex_map {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Backtracking over role positions in increasing id order, so the first
/// complete assignment is the lexicographically smallest match.
struct Search<'a> {
    d: &'a Dense,
    pattern: Pattern,
    /// For each position, an earlier template neighbour to draw candidates from.
    anchor: Vec<Option<usize>>,
    adj: Vec<Vec<bool>>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Dense, pattern: Pattern) -> Self {
        let n = pattern.order();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| pattern.adjacent(i, j)).collect())
            .collect();
        let anchor = (0..n).map(|i| (0..i).find(|&j| adj[i][j])).collect();
        Search {
            d,
            pattern,
            anchor,
            adj,
        }
    }

    /// Calls `visit` on each match in lexicographic order until it returns true.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut map = Vec::with_capacity(self.pattern.order());
        self.extend(&mut map, visit)
    }

    fn extend(&self, map: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = map.len();
        if i == self.pattern.order() {
            return visit(map);
        }
        let all: Vec<usize>;
        let candidates: &[usize] = match self.anchor[i] {
            Some(j) => &self.d.adj[map[j]],
            None => {
                all = (0..self.d.len()).collect();
                &all
            }
        };
        for &x in candidates {
            if map.contains(&x) {
                continue;
            }
            if (0..i).all(|j| self.d.has(map[j], x) == self.adj[i][j]) {
                map.push(x);
                if self.extend(map, visit) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
}

fn to_match(d: &Dense, pattern: Pattern, idx: &[usize]) -> PatternMatch {
    PatternMatch {
        pattern,
        vertex_map: idx.iter().map(|&i| d.ids[i]).collect(),
    }
}

pub fn find_induced(g: &FiniteGraph, pattern: Pattern) -> Option<PatternMatch> {
    let d = g.dense();
    let mut found = None;
    Search::new(&d, pattern).run(&mut |m| {
        found = Some(to_match(&d, pattern, m));
        true
    });
    found
}

/// Every induced copy in role order, including the copies that differ only by
/// a template automorphism.
pub fn all_induced(g: &FiniteGraph, pattern: Pattern) -> Vec<PatternMatch> {
    let d = g.dense();
    let mut out = Vec::new();
    Search::new(&d, pattern).run(&mut |m| {
        out.push(to_match(&d, pattern, m));
        false
    });
    out
}

pub fn is_claw_free(g: &FiniteGraph) -> bool {
    find_induced(g, Pattern::Claw).is_none()
}

pub fn is_net_free(g: &FiniteGraph) -> bool {
    find_induced(g, Pattern::Net).is_none()
}

pub fn is_bull_free(g: &FiniteGraph) -> bool {
    find_induced(g, Pattern::Bull).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelaxedBullReport {
    pub holds: bool,
    /// The first bull whose horns have no common neighbour off the bull.
    pub witness: Option<PatternMatch>,
    pub bulls_checked: usize,
    /// Set when computed on a window: a missing common neighbour might lie
    /// outside it, so `holds == false` is a statement about the window only.
    pub window_relative: bool,
}

/// Every induced bull has a vertex outside it adjacent to both horns.
pub fn check_relaxed_bull_condition(g: &FiniteGraph) -> RelaxedBullReport {
    let d = g.dense();
    let mut witness = None;
    let mut bulls_checked = 0;
    Search::new(&d, Pattern::Bull).run(&mut |m| {
        bulls_checked += 1;
        let (b1, b2) = (m[3], m[4]);
        let covered = d.adj[b1].iter().any(|&c| !m.contains(&c) && d.has(c, b2));
        if !covered {
            witness = Some(to_match(&d, Pattern::Bull, m));
        }
        !covered
    });
    RelaxedBullReport {
        holds: witness.is_none(),
        witness,
        bulls_checked,
        window_relative: false,
    }
}

pub fn check_relaxed_bull_condition_in_window(w: &Window) -> RelaxedBullReport {
    RelaxedBullReport {
        window_relative: true,
        ..check_relaxed_bull_condition(&w.graph)
    }
}
