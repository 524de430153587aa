//! Threading one or two disjoint paths through a chain of cliques.
//!
//! Classes `C_0, C_1, …` are cliques with edges only between consecutive
//! classes. Each strand crosses every class as one contiguous block, so a
//! choice per class is an entry and an exit vertex. A backward pass records
//! which exits can still be completed; the forward pass then picks the
//! smallest admissible choice, so it never backtracks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, FiniteGraph, VertexId};

fn check_cliques(g: &FiniteGraph, classes: &[BTreeSet<VertexId>]) -> Result<()> {
    for (i, c) in classes.iter().enumerate() {
        if c.is_empty() || !g.is_clique(c) {
            return Err(Error::structure(format!(
                "chain class {i} is empty or not a clique"
            )));
        }
    }
    Ok(())
}

/// Block `e, middle…, x` inside a clique, with the forced edge made
/// consecutive when both its ends are in the block.
fn block(
    e: VertexId,
    x: VertexId,
    members: &BTreeSet<VertexId>,
    forced: Option<Edge>,
) -> Vec<VertexId> {
    let mut middle: Vec<VertexId> = members
        .iter()
        .copied()
        .filter(|&v| v != e && v != x)
        .collect();
    if let Some(f) = forced {
        let (a, b) = (f.lo(), f.hi());
        if members.contains(&a) && members.contains(&b) {
            let pull = |middle: &mut Vec<VertexId>, v: VertexId| {
                if let Some(i) = middle.iter().position(|&m| m == v) {
                    middle.remove(i);
                }
            };
            if a == e || b == e {
                let o = f.other(e);
                if o != x {
                    pull(&mut middle, o);
                    middle.insert(0, o);
                }
            } else if a == x || b == x {
                let o = f.other(x);
                pull(&mut middle, o);
                middle.push(o);
            } else {
                pull(&mut middle, a);
                pull(&mut middle, b);
                middle.insert(0, b);
                middle.insert(0, a);
            }
        }
    }
    let mut p = vec![e];
    p.extend(middle);
    if x != e {
        p.push(x);
    }
    p
}

/// One path through every class, optionally continuing from `prev` (its
/// first vertex must then be adjacent to `prev`) and optionally using the
/// edge `forced`.
pub(crate) fn thread_single(
    g: &FiniteGraph,
    classes: &[BTreeSet<VertexId>],
    prev: Option<VertexId>,
    forced: Option<Edge>,
) -> Result<Vec<VertexId>> {
    check_cliques(g, classes)?;
    let t = classes.len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let class_of = |v: VertexId| classes.iter().position(|c| c.contains(&v));
    // where the forced edge sits: inside class i, or from the exit of i to the entry of i+1
    let mut inside = None;
    let mut between: Option<(Option<usize>, VertexId, VertexId)> = None;
    if let Some(f) = forced {
        let (a, b) = (f.lo(), f.hi());
        match (class_of(a), class_of(b)) {
            (Some(i), Some(j)) if i == j => inside = Some(i),
            (Some(i), Some(j)) if j == i + 1 => between = Some((Some(i), a, b)),
            (Some(i), Some(j)) if i == j + 1 => between = Some((Some(j), b, a)),
            (None, Some(0)) if prev == Some(a) => between = Some((None, a, b)),
            (Some(0), None) if prev == Some(b) => between = Some((None, b, a)),
            _ => {
                return Err(Error::input(format!(
                    "forced edge {f} does not fit the chain"
                )))
            }
        }
        if !g.has_edge(a, b) {
            return Err(Error::input(format!("forced edge {f} is not an edge")));
        }
    }

    let options = |i: usize| -> Vec<(VertexId, VertexId)> {
        let c = &classes[i];
        let mut out = Vec::new();
        for &e in c {
            for &x in c {
                if (e == x) != (c.len() == 1) {
                    continue;
                }
                if inside == Some(i) && c.len() > 2 {
                    let f = forced.unwrap();
                    if Edge::new(e, x) == f {
                        continue;
                    }
                }
                if let Some((Some(j), fa, fb)) = between {
                    if j == i && x != fa || j + 1 == i && e != fb {
                        continue;
                    }
                }
                if let Some((None, _, fb)) = between {
                    if i == 0 && e != fb {
                        continue;
                    }
                }
                out.push((e, x));
            }
        }
        out
    };
    let opts: Vec<Vec<(VertexId, VertexId)>> = (0..t).map(options).collect();

    // completable[i]: exits of class i from which classes i+1.. can be threaded
    let mut completable = vec![BTreeSet::new(); t];
    completable[t - 1] = opts[t - 1].iter().map(|&(_, x)| x).collect();
    for i in (0..t - 1).rev() {
        let reach: Vec<VertexId> = opts[i + 1]
            .iter()
            .filter(|(_, x)| completable[i + 1].contains(x))
            .map(|&(e, _)| e)
            .collect();
        completable[i] = opts[i]
            .iter()
            .map(|&(_, x)| x)
            .filter(|&x| reach.iter().any(|&e| g.has_edge(x, e)))
            .collect();
    }

    let mut path = Vec::new();
    let mut last = prev;
    for i in 0..t {
        let &(e, x) = opts[i]
            .iter()
            .find(|&&(e, x)| completable[i].contains(&x) && last.map_or(true, |p| g.has_edge(p, e)))
            .ok_or_else(|| {
                Error::structure(format!("cannot thread a path through chain class {i}"))
            })?;
        path.extend(block(e, x, &classes[i], forced));
        last = Some(x);
    }
    Ok(path)
}

type Quad = (VertexId, VertexId, VertexId, VertexId);

/// Two disjoint paths through every class, continuing from `starts[0]` and
/// `starts[1]` respectively.
pub(crate) fn thread_double(
    g: &FiniteGraph,
    classes: &[BTreeSet<VertexId>],
    starts: [VertexId; 2],
) -> Result<[Vec<VertexId>; 2]> {
    check_cliques(g, classes)?;
    let t = classes.len();
    if t == 0 {
        return Ok([Vec::new(), Vec::new()]);
    }
    let options = |c: &BTreeSet<VertexId>| -> Vec<Quad> {
        let mut out = Vec::new();
        for &e1 in c {
            for &x1 in c {
                for &e2 in c {
                    for &x2 in c {
                        if e2 == e1 || e2 == x1 || x2 == e1 || x2 == x1 {
                            continue;
                        }
                        let distinct = [e1, x1, e2, x2].into_iter().collect::<BTreeSet<_>>().len();
                        if e1 == x1 && e2 == x2 && distinct < c.len() {
                            continue;
                        }
                        out.push((e1, x1, e2, x2));
                    }
                }
            }
        }
        out
    };
    let opts: Vec<Vec<Quad>> = classes.iter().map(options).collect();
    let mut completable: Vec<BTreeSet<(VertexId, VertexId)>> = vec![BTreeSet::new(); t];
    completable[t - 1] = opts[t - 1].iter().map(|&(_, x1, _, x2)| (x1, x2)).collect();
    for i in (0..t - 1).rev() {
        let entries: Vec<(VertexId, VertexId)> = opts[i + 1]
            .iter()
            .filter(|&&(_, x1, _, x2)| completable[i + 1].contains(&(x1, x2)))
            .map(|&(e1, _, e2, _)| (e1, e2))
            .collect();
        completable[i] = opts[i]
            .iter()
            .map(|&(_, x1, _, x2)| (x1, x2))
            .filter(|&(x1, x2)| {
                entries
                    .iter()
                    .any(|&(e1, e2)| g.has_edge(x1, e1) && g.has_edge(x2, e2))
            })
            .collect();
    }

    let mut strands = [Vec::new(), Vec::new()];
    let (mut p1, mut p2) = (starts[0], starts[1]);
    for i in 0..t {
        let &(e1, x1, e2, x2) = opts[i]
            .iter()
            .find(|&&(e1, x1, e2, x2)| {
                completable[i].contains(&(x1, x2)) && g.has_edge(p1, e1) && g.has_edge(p2, e2)
            })
            .ok_or_else(|| {
                Error::structure(format!("cannot thread two strands through chain class {i}"))
            })?;
        let c = &classes[i];
        let others: BTreeSet<VertexId> = c
            .iter()
            .copied()
            .filter(|v| ![e1, x1, e2, x2].contains(v))
            .collect();
        let (own1, own2) = if e1 != x1 {
            (others, BTreeSet::new())
        } else {
            (BTreeSet::new(), others)
        };
        let with = |e: VertexId, x: VertexId, extra: BTreeSet<VertexId>| {
            let mut m = extra;
            m.insert(e);
            m.insert(x);
            block(e, x, &m, None)
        };
        strands[0].extend(with(e1, x1, own1));
        strands[1].extend(with(e2, x2, own2));
        p1 = x1;
        p2 = x2;
    }
    Ok(strands)
}
