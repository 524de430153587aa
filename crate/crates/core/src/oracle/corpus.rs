//! Test corpora: every connected graph up to isomorphism for small orders,
//! plus seeded random graphs beyond that.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::{is_bull_free, is_claw_free, is_net_free};
use crate::error::{Error, Result};
use crate::graph::{is_connected, is_k_connected, write_edge_list, FiniteGraph, VertexId};

pub const EXHAUSTIVE_MAX: usize = 7;
pub const RANDOM_MAX: usize = 9;

/// Composable graph properties; `None` leaves a property unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Filter {
    pub claw_free: Option<bool>,
    pub net_free: Option<bool>,
    pub bull_free: Option<bool>,
    /// Minimum vertex connectivity.
    pub connectivity: Option<usize>,
}

impl Filter {
    /// Comma-separated terms such as `claw-free,!net-free,2-connected`.
    pub fn parse(s: &str) -> Result<Filter> {
        let mut f = Filter::default();
        for term in s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "any")
        {
            let (want, name) = match term.strip_prefix('!') {
                Some(rest) => (false, rest),
                None => (true, term),
            };
            match name {
                "claw-free" => f.claw_free = Some(want),
                "net-free" => f.net_free = Some(want),
                "bull-free" => f.bull_free = Some(want),
                _ => {
                    let k = name
                        .strip_suffix("-connected")
                        .and_then(|k| k.parse().ok())
                        .filter(|_| want)
                        .ok_or_else(|| Error::input(format!("unknown filter term {term:?}")))?;
                    f.connectivity = Some(k);
                }
            }
        }
        Ok(f)
    }

    pub fn accepts(&self, g: &FiniteGraph) -> bool {
        let checks: [(Option<bool>, fn(&FiniteGraph) -> bool); 3] = [
            (self.claw_free, is_claw_free),
            (self.net_free, is_net_free),
            (self.bull_free, is_bull_free),
        ];
        checks
            .iter()
            .all(|(want, f)| want.is_none_or(|w| f(g) == w))
            && self
                .connectivity
                .is_none_or(|k| is_k_connected(g, k).unwrap_or(false))
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (name, want) in [
            ("claw-free", self.claw_free),
            ("net-free", self.net_free),
            ("bull-free", self.bull_free),
        ] {
            match want {
                Some(true) => terms.push(name.to_string()),
                Some(false) => terms.push(format!("!{name}")),
                None => {}
            }
        }
        if let Some(k) = self.connectivity {
            terms.push(format!("{k}-connected"));
        }
        if terms.is_empty() {
            f.write_str("any")
        } else {
            f.write_str(&terms.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Exhaustive { n: usize },
    Random { seed: u64, draw: u64 },
    FamilyWindow { family: String, depth: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exhaustive { n } => write!(f, "exhaustive-{n}"),
            Provenance::Random { seed, draw } => write!(f, "random-seeded seed={seed} draw={draw}"),
            Provenance::FamilyWindow { family, depth } => {
                write!(f, "family-window {family} depth={depth}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub graphs: Vec<FiniteGraph>,
    pub provenance: Vec<Provenance>,
    /// Set when fewer graphs than requested could be produced.
    pub notice: Option<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn push(&mut self, g: FiniteGraph, p: Provenance) {
        self.graphs.push(g);
        self.provenance.push(p);
    }

    pub fn extend(&mut self, other: Corpus) {
        self.graphs.extend(other.graphs);
        self.provenance.extend(other.provenance);
        self.notice = self.notice.take().or(other.notice);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FiniteGraph, &Provenance)> {
        self.graphs.iter().zip(&self.provenance)
    }

    /// Entry `i` in edge-list form with its provenance as a comment line.
    pub fn entry_text(&self, i: usize) -> Result<String> {
        write_edge_list(
            &self.graphs[i],
            Some(&format!("provenance: {}", self.provenance[i])),
        )
    }
}

/// Upper-triangle adjacency bits of a graph on `0..n`, pair `(i, j)` with
/// `i < j` at bit `pair_index(i, j)`.
type Code = u64;

fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn code_has(c: Code, i: usize, j: usize) -> bool {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    c >> pair_index(i, j) & 1 == 1
}

/// Smallest code over all relabelings that order vertices by a refined
/// degree invariant; isomorphic graphs get the same code.
fn canonical(c: Code, n: usize) -> Code {
    let deg: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&w| w != v && code_has(c, v, w)).count())
        .collect();
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = (0..n)
                .filter(|&w| w != v && code_has(c, v, w))
                .map(|w| deg[w])
                .collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut keys: Vec<&(usize, Vec<usize>)> =
        inv.iter().collect::<BTreeSet<_>>().into_iter().collect();
    keys.sort();
    for k in keys {
        cells.push((0..n).filter(|&v| &inv[v] == k).collect());
    }
    let mut order = Vec::with_capacity(n);
    let mut best = Code::MAX;
    permute_cells(c, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(
    c: Code,
    cells: &mut [Vec<usize>],
    at: usize,
    order: &mut Vec<usize>,
    best: &mut Code,
) {
    if at == cells.len() {
        // order[new label] = old vertex
        let n = order.len();
        let mut code = 0;
        for j in 1..n {
            for i in 0..j {
                if code_has(c, order[i], order[j]) {
                    code |= 1 << pair_index(i, j);
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    let len = cells[at].len();
    heap_permutations(cells, at, len, order, c, best);
}

/// Visits every ordering of `cells[at]` (Heap's algorithm), recursing into
/// the next cell for each.
fn heap_permutations(
    cells: &mut [Vec<usize>],
    at: usize,
    k: usize,
    order: &mut Vec<usize>,
    c: Code,
    best: &mut Code,
) {
    if k <= 1 {
        let base = order.len();
        order.extend(cells[at].iter().copied());
        permute_cells(c, cells, at + 1, order, best);
        order.truncate(base);
        return;
    }
    for i in 0..k {
        heap_permutations(cells, at, k - 1, order, c, best);
        let j = if k % 2 == 0 { i } else { 0 };
        cells[at].swap(j, k - 1);
    }
}

fn graph_of(c: Code, n: usize) -> FiniteGraph {
    let edges = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| code_has(c, i, j));
    FiniteGraph::from_parts(
        0..n as VertexId,
        edges.map(|(i, j)| (i as VertexId, j as VertexId)),
    )
    .expect("codes only name vertices below n")
}

/// Every graph (connected or not) on `n` vertices, as sorted canonical codes.
fn all_graphs(n: usize) -> Vec<Code> {
    let mut level: Vec<Code> = vec![0];
    for m in 1..n {
        // a new vertex m joined to every subset of 0..m
        let mut next = BTreeSet::new();
        for &c in &level {
            for nb in 0u64..(1 << m) {
                let mut d = c;
                for i in 0..m {
                    if nb >> i & 1 == 1 {
                        d |= 1 << pair_index(i, m);
                    }
                }
                next.insert(canonical(d, m + 1));
            }
        }
        level = next.into_iter().collect();
    }
    level
}

/// All connected graphs on `n` vertices up to isomorphism, labelled `0..n`.
pub fn exhaustive_connected(n: usize) -> Result<Vec<FiniteGraph>> {
    if n == 0 || n > EXHAUSTIVE_MAX {
        return Err(Error::input(format!(
            "exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_MAX}"
        )));
    }
    Ok(all_graphs(n)
        .into_iter()
        .map(|c| graph_of(c, n))
        .filter(is_connected)
        .collect())
}

/// Connected `G(n, p)` samples accepted by `filter`, with `n` drawn from
/// `sizes` and `p` from `[0.35, 0.9]`.
pub fn random_sample(
    filter: &Filter,
    sizes: RangeInclusive<usize>,
    seed: u64,
    count: usize,
) -> Result<Corpus> {
    if *sizes.start() == 0 || *sizes.end() > RANDOM_MAX || sizes.is_empty() {
        return Err(Error::input(format!(
            "random sizes must lie in 1..={RANDOM_MAX}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Corpus::default();
    let attempts = 1000 + 20_000 * count as u64;
    for draw in 0..attempts {
        if out.len() == count {
            break;
        }
        let n = rng.gen_range(sizes.clone());
        let p: f64 = rng.gen_range(0.35..0.9);
        let mut c: Code = 0;
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    c |= 1 << pair_index(i, j);
                }
            }
        }
        let g = graph_of(c, n);
        if is_connected(&g) && filter.accepts(&g) {
            out.push(g, Provenance::Random { seed, draw });
        }
    }
    if out.len() < count {
        out.notice = Some(format!(
            "only {} of {count} random graphs satisfy {filter} after {attempts} draws",
            out.len()
        ));
    }
    Ok(out)
}

/// Up to `count` graphs: exhaustive orders first, then seeded random
/// samples for orders above the exhaustive limit.
pub fn generate_corpus(filter: &Filter, n_max: usize, seed: u64, count: usize) -> Result<Corpus> {
    if n_max > RANDOM_MAX {
        return Err(Error::input(format!("corpus orders stop at {RANDOM_MAX}")));
    }
    let mut out = Corpus::default();
    for n in 1..=n_max.min(EXHAUSTIVE_MAX) {
        for g in exhaustive_connected(n)? {
            if out.len() == count {
                break;
            }
            if filter.accepts(&g) {
                out.push(g, Provenance::Exhaustive { n });
            }
        }
    }
    if n_max > EXHAUSTIVE_MAX && out.len() < count {
        out.extend(random_sample(
            filter,
            EXHAUSTIVE_MAX + 1..=n_max,
            seed,
            count - out.len(),
        )?);
    }
    if out.is_empty() && out.notice.is_none() {
        out.notice = Some(format!(
            "no connected graph up to order {n_max} satisfies {filter}"
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| exhaustive_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_codes_ignore_labels() {
        // the path 0-1-2 and the path 1-0-2
        let a = 1 << pair_index(0, 1) | 1 << pair_index(1, 2);
        let b = 1 << pair_index(0, 1) | 1 << pair_index(0, 2);
        assert_eq!(canonical(a, 3), canonical(b, 3));
        assert_ne!(canonical(a, 3), canonical(a | 1 << pair_index(0, 2), 3));
    }

    #[test]
    fn filters_parse_and_print() {
        let f = Filter::parse("claw-free, !net-free,2-connected").unwrap();
        assert_eq!(f.to_string(), "claw-free,!net-free,2-connected");
        assert_eq!(Filter::parse("any").unwrap(), Filter::default());
        assert!(Filter::parse("pretty").is_err());
        assert!(Filter::parse("!3-connected").is_err());
    }

    #[test]
    fn filtered_corpora() {
        let f = Filter::parse("claw-free,net-free,2-connected").unwrap();
        let c = generate_corpus(&f, 6, 0, usize::MAX).unwrap();
        assert!(!c.is_empty());
        let c5 = FiniteGraph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(f.accepts(&c5));

        // the net itself is claw-free
        let net = Filter::parse("claw-free,!net-free").unwrap();
        let c = generate_corpus(&net, 6, 0, usize::MAX).unwrap();
        assert!(c.iter().any(|(g, _)| g.order() == 6 && g.size() == 6));

        assert!(generate_corpus(&f, 6, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn random_samples_are_reproducible() {
        let f = Filter::parse("claw-free").unwrap();
        let a = random_sample(&f, 8..=9, 5, 10).unwrap();
        let b = random_sample(&f, 8..=9, 5, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|(g, _)| is_claw_free(g) && is_connected(g)));
        assert!(a
            .entry_text(0)
            .unwrap()
            .starts_with("# provenance: random-seeded seed=5"));
    }
}
