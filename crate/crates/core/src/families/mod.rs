//! Locally finite infinite graphs given by a neighbour oracle.
//!
//! Every concrete family here is a `k`-blow-up of a periodic template: cells
//! indexed by `ℕ` (one end) or `ℤ` (two ends), each holding `width` template
//! vertices, and each template vertex replaced by a clique of size `k`. The
//! ray and double-ray blow-ups are the width-1 templates.

mod descriptor;
mod window;

pub use descriptor::{parse_family, write_family};
pub(crate) use window::Explorer;
pub use window::{
    distance_increasing_ray, end_count_empirical, geodetic_double_ray, window, Window,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    RayBlowup,
    DoubleRayBlowup,
    CustomPeriodic,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::RayBlowup => "ray_blowup",
            FamilyKind::DoubleRayBlowup => "double_ray_blowup",
            FamilyKind::CustomPeriodic => "custom_periodic",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Adjacency template of a periodic graph: `rows[a]` lists `(b, offset)`
/// meaning slot `a` of cell `c` is adjacent to slot `b` of cell `c + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodTable {
    pub width: u32,
    pub ends: u8,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl PeriodTable {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 {
            return Err(Error::input("template width must be positive"));
        }
        if !(1..=2).contains(&self.ends) {
            return Err(Error::input("template ends must be 1 or 2"));
        }
        if self.rows.len() != self.width as usize {
            return Err(Error::input(format!(
                "template has {} rows for width {}",
                self.rows.len(),
                self.width
            )));
        }
        for (a, row) in self.rows.iter().enumerate() {
            let a = a as u32;
            let mut seen = std::collections::BTreeSet::new();
            for &(b, off) in row {
                if b >= self.width {
                    return Err(Error::input(format!("row {a}: slot {b} out of range")));
                }
                if b == a && off == 0 {
                    return Err(Error::input(format!("row {a}: self-loop")));
                }
                if !seen.insert((b, off)) {
                    return Err(Error::input(format!("row {a}: duplicate entry {b}@{off}")));
                }
                if !self.rows[b as usize].contains(&(a, -off)) {
                    return Err(Error::input(format!(
                        "asymmetric template: row {a} lists {b}@{off} but row {b} lacks {a}@{}",
                        -off
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ray() -> Self {
        PeriodTable {
            width: 1,
            ends: 1,
            rows: vec![vec![(0, 1), (0, -1)]],
        }
    }

    pub fn double_ray() -> Self {
        PeriodTable {
            width: 1,
            ends: 2,
            rows: vec![vec![(0, 1), (0, -1)]],
        }
    }

    /// The one-ended ladder `P∞ × K₂`; contains claws.
    pub fn ladder() -> Self {
        PeriodTable {
            width: 2,
            ends: 1,
            rows: vec![vec![(1, 0), (0, 1), (0, -1)], vec![(0, 0), (1, 1), (1, -1)]],
        }
    }

    /// Square of the double ray: `i ~ j` iff `0 < |i - j| ≤ 2`.
    pub fn double_ray_square() -> Self {
        PeriodTable {
            width: 1,
            ends: 2,
            rows: vec![vec![(0, 1), (0, 2), (0, -1), (0, -2)]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub k: u32,
    pub period_table: Option<PeriodTable>,
}

impl FamilySpec {
    pub fn ray_blowup(k: u32) -> Self {
        FamilySpec {
            kind: FamilyKind::RayBlowup,
            k,
            period_table: None,
        }
    }

    pub fn double_ray_blowup(k: u32) -> Self {
        FamilySpec {
            kind: FamilyKind::DoubleRayBlowup,
            k,
            period_table: None,
        }
    }

    pub fn custom(table: PeriodTable, k: u32) -> Self {
        FamilySpec {
            kind: FamilyKind::CustomPeriodic,
            k,
            period_table: Some(table),
        }
    }

    pub fn name(&self) -> String {
        format!("{}(k={})", self.kind, self.k)
    }

    fn table(&self) -> Result<PeriodTable> {
        if self.k == 0 {
            return Err(Error::input("blow-up factor k must be at least 1"));
        }
        let t = match self.kind {
            FamilyKind::RayBlowup => PeriodTable::ray(),
            FamilyKind::DoubleRayBlowup => PeriodTable::double_ray(),
            FamilyKind::CustomPeriodic => self
                .period_table
                .clone()
                .ok_or_else(|| Error::input("custom_periodic needs a template"))?,
        };
        t.validate()?;
        Ok(t)
    }
}

/// The blow-up families the structural claims are made about.
pub fn catalog() -> Vec<FamilySpec> {
    (1..=4)
        .map(FamilySpec::ray_blowup)
        .chain((1..=4).map(FamilySpec::double_ray_blowup))
        .collect()
}

type Oracle = dyn Fn(VertexId) -> Vec<VertexId> + Send + Sync;
type Layout = dyn Fn(VertexId) -> (i64, u32) + Send + Sync;

/// A connected, locally finite graph known only through its neighbour oracle.
#[derive(Clone)]
pub struct LazyGraph {
    oracle: Arc<Oracle>,
    layout: Option<Arc<Layout>>,
    pub root: VertexId,
    pub declared_ends: u8,
    pub degree_bound: usize,
    pub spec: Option<FamilySpec>,
}

impl fmt::Debug for LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyGraph")
            .field("root", &self.root)
            .field("declared_ends", &self.declared_ends)
            .field("degree_bound", &self.degree_bound)
            .field("spec", &self.spec)
            .finish()
    }
}

impl LazyGraph {
    pub fn new(
        oracle: impl Fn(VertexId) -> Vec<VertexId> + Send + Sync + 'static,
        root: VertexId,
        declared_ends: u8,
        degree_bound: usize,
    ) -> Self {
        LazyGraph {
            oracle: Arc::new(oracle),
            layout: None,
            root,
            declared_ends,
            degree_bound,
            spec: None,
        }
    }

    /// Wraps a finite graph; ids outside it have no neighbours.
    pub fn from_finite(g: crate::graph::FiniteGraph, root: VertexId) -> Self {
        let bound = g.max_degree();
        let g = Arc::new(g);
        LazyGraph::new(
            move |v| {
                if g.contains(v) {
                    g.neighbors(v).iter().copied().collect()
                } else {
                    Vec::new()
                }
            },
            root,
            0,
            bound,
        )
    }

    /// Sorted neighbour list; fails if the degree bound is exceeded.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        let mut ns = (self.oracle)(v);
        ns.sort_unstable();
        ns.dedup();
        if ns.len() > self.degree_bound {
            return Err(Error::Integrity(format!(
                "vertex {v} has degree {} above the bound {}",
                ns.len(),
                self.degree_bound
            )));
        }
        if ns.contains(&v) {
            return Err(Error::Integrity(format!("vertex {v} lists itself")));
        }
        Ok(ns)
    }

    /// Drawing coordinates `(cell, slot)` when the family provides them.
    pub fn layout(&self, v: VertexId) -> Option<(i64, u32)> {
        self.layout.as_ref().map(|f| f(v))
    }
}

fn zigzag(c: i64) -> u64 {
    if c > 0 {
        (2 * c - 1) as u64
    } else {
        (-2 * c) as u64
    }
}

fn unzigzag(n: u64) -> i64 {
    if n % 2 == 1 {
        (n as i64 + 1) / 2
    } else {
        -(n as i64 / 2)
    }
}

/// Builds the lazy graph of a family. Vertex `s` of the clique replacing
/// template slot `a` in cell `c` gets id `code(c, a)·k + s`, where
/// `code(c, a) = enc(c)·width + a` and `enc` is the identity for one-ended
/// templates and the zig-zag map `0, 1, -1, 2, -2, … ↦ 0, 1, 2, 3, 4, …`
/// for two-ended ones.
pub fn instantiate(spec: &FamilySpec) -> Result<LazyGraph> {
    let table = spec.table()?;
    let k = spec.k as u64;
    let width = table.width as u64;
    let two_ended = table.ends == 2;
    let rows = Arc::new(table.rows.clone());

    let decode = move |v: VertexId| -> (i64, u32, u32) {
        let code = v as u64 / k;
        let s = (v as u64 % k) as u32;
        let cell = code / width;
        let a = (code % width) as u32;
        let c = if two_ended {
            unzigzag(cell)
        } else {
            cell as i64
        };
        (c, a, s)
    };
    let encode = move |c: i64, a: u32, s: u32| -> Option<VertexId> {
        if !two_ended && c < 0 {
            return None;
        }
        let cell = if two_ended { zigzag(c) } else { c as u64 };
        VertexId::try_from((cell * width + a as u64) * k + s as u64).ok()
    };

    let oracle = {
        let rows = rows.clone();
        move |v: VertexId| {
            let (c, a, s) = decode(v);
            let mut out: Vec<VertexId> = (0..k as u32)
                .filter(|&t| t != s)
                .filter_map(|t| encode(c, a, t))
                .collect();
            for &(b, off) in &rows[a as usize] {
                for t in 0..k as u32 {
                    if let Some(w) = encode(c + off, b, t) {
                        out.push(w);
                    }
                }
            }
            out
        }
    };
    let layout = move |v: VertexId| {
        let (c, a, s) = decode(v);
        (c, a * k as u32 + s)
    };
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    Ok(LazyGraph {
        oracle: Arc::new(oracle),
        layout: Some(Arc::new(layout)),
        root: 0,
        declared_ends: table.ends,
        degree_bound: (k as usize - 1) + max_row * k as usize,
        spec: Some(spec.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_roundtrip() {
        let order: Vec<u64> = [0, 1, -1, 2, -2].iter().map(|&c| zigzag(c)).collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
        for c in -50..50 {
            assert_eq!(unzigzag(zigzag(c)), c);
        }
    }

    #[test]
    fn ray_blowup_one_is_a_ray() {
        let g = instantiate(&FamilySpec::ray_blowup(1)).unwrap();
        assert_eq!(g.neighbors(0).unwrap(), vec![1]);
        for v in 1..20 {
            assert_eq!(g.neighbors(v).unwrap(), vec![v - 1, v + 1]);
        }
        assert_eq!(g.declared_ends, 1);
    }

    #[test]
    fn ray_blowup_two_interior_degree_five() {
        let g = instantiate(&FamilySpec::ray_blowup(2)).unwrap();
        for v in 2..30 {
            let ns = g.neighbors(v).unwrap();
            assert_eq!(ns.len(), 5, "vertex {v}");
            for w in ns {
                assert!(g.neighbors(w).unwrap().contains(&v));
            }
        }
    }

    #[test]
    fn double_ray_ids_follow_zigzag() {
        let g = instantiate(&FamilySpec::double_ray_blowup(1)).unwrap();
        // cell 0 -> id 0, cell 1 -> 1, cell -1 -> 2
        assert_eq!(g.neighbors(0).unwrap(), vec![1, 2]);
        assert_eq!(g.declared_ends, 2);
        let g3 = instantiate(&FamilySpec::double_ray_blowup(3)).unwrap();
        assert_eq!(g3.neighbors(0).unwrap(), vec![1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(g3.layout(7), Some((-1, 1)));
    }

    #[test]
    fn asymmetric_template_rejected() {
        let bad = PeriodTable {
            width: 1,
            ends: 1,
            rows: vec![vec![(0, 1)]],
        };
        assert!(matches!(
            instantiate(&FamilySpec::custom(bad, 1)),
            Err(Error::Input(_))
        ));
        assert!(instantiate(&FamilySpec::ray_blowup(0)).is_err());
    }

    #[test]
    fn degree_bound_enforced() {
        let g = LazyGraph::new(|v| vec![v + 1, v + 2, v + 3], 0, 1, 2);
        assert!(matches!(g.neighbors(0), Err(Error::Integrity(_))));
    }
}
