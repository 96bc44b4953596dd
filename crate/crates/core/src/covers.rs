//! Covers of the complete graph `K_n` by complete bipartite graphs.
//!
//! Vertices are numbered `1..=n`. A cover is a multiset of bipartite graphs;
//! an edge `{u, v}` is covered once by every graph that puts `u` and `v` on
//! opposite sides.
//!
//! ```
//! use bicover::covers::{star_decomposition, verify_cover, Mode};
//!
//! let stars = star_decomposition(5).unwrap();
//! assert_eq!(stars.graphs().len(), 4);
//! assert!(verify_cover(&stars, 5, Mode::ExactOnce).ok);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::matrices::SignMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("bipartite graph has an empty side")]
    EmptySide,
    #[error("vertex {0} appears on both sides")]
    Overlap(usize),
    #[error("vertex {0} repeated within one side")]
    Duplicate(usize),
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("n = {0} is too small")]
    NTooSmall(usize),
    #[error("matrix is not square")]
    NotSquareMatrix,
    #[error("p = {0} must be at least 2")]
    BadModulus(u64),
}

/// A complete bipartite graph `A × B` with `A`, `B` disjoint and nonempty.
/// Stored canonically: both sides sorted, and the side holding the smallest
/// vertex first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct BipartiteGraph {
    a: Vec<usize>,
    b: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
}

impl TryFrom<GraphJson> for BipartiteGraph {
    type Error = CoverError;
    fn try_from(g: GraphJson) -> Result<Self, CoverError> {
        BipartiteGraph::new(g.a, g.b)
    }
}

impl From<BipartiteGraph> for GraphJson {
    fn from(g: BipartiteGraph) -> Self {
        GraphJson { a: g.a, b: g.b }
    }
}

impl BipartiteGraph {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Result<BipartiteGraph, CoverError> {
        if a.is_empty() || b.is_empty() {
            return Err(CoverError::EmptySide);
        }
        for side in [&mut a, &mut b] {
            side.sort_unstable();
            if let Some(w) = side.windows(2).find(|w| w[0] == w[1]) {
                return Err(CoverError::Duplicate(w[0]));
            }
            if side[0] == 0 {
                return Err(CoverError::VertexOutOfRange { v: 0, n: 0 });
            }
        }
        if let Some(&v) = a.iter().find(|v| b.binary_search(v).is_ok()) {
            return Err(CoverError::Overlap(v));
        }
        if b[0] < a[0] {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(BipartiteGraph { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Number of edges, `|A|·|B|`.
    pub fn edge_count(&self) -> usize {
        self.a.len() * self.b.len()
    }

    pub fn covers_edge(&self, u: usize, v: usize) -> bool {
        let (ia, ib) = (self.a.binary_search(&u).is_ok(), self.b.binary_search(&u).is_ok());
        (ia && self.b.binary_search(&v).is_ok()) || (ib && self.a.binary_search(&v).is_ok())
    }

    pub fn max_vertex(&self) -> usize {
        self.a.last().copied().max(self.b.last().copied()).unwrap_or(0)
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}}, {{{}}})", side(&self.a), side(&self.b))
    }
}

/// A multiset of bipartite graphs over the vertex set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    n: usize,
    graphs: Vec<BipartiteGraph>,
}

impl Cover {
    pub fn new(n: usize, graphs: Vec<BipartiteGraph>) -> Result<Cover, CoverError> {
        if let Some(g) = graphs.iter().find(|g| g.max_vertex() > n) {
            return Err(CoverError::VertexOutOfRange { v: g.max_vertex(), n });
        }
        Ok(Cover { n, graphs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graphs(&self) -> &[BipartiteGraph] {
        &self.graphs
    }

    /// The graphs in canonical (sorted) order.
    pub fn sorted(&self) -> Cover {
        let mut graphs = self.graphs.clone();
        graphs.sort();
        Cover { n: self.n, graphs }
    }

    /// Canonical JSON: graphs sorted lexicographically.
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "graphs": self.sorted().graphs })
    }

    pub fn from_json(v: &Value) -> Result<Cover, String> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            graphs: Vec<BipartiteGraph>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        Cover::new(raw.n, raw.graphs).map_err(|e| e.to_string())
    }
}

/// One graph per nonzero column of `m`, over the vertex pairs `(2i−1, 2i)`.
///
/// A `+1` at `(i, j)` puts `2i−1` in side A and `2i` in side B of graph `j`;
/// a `−1` swaps them; a `0` leaves pair `i` out. All-zero columns produce no
/// graph.
pub fn pairs_construction(m: &SignMatrix) -> Result<Cover, CoverError> {
    let n = m.order();
    let mut graphs = Vec::with_capacity(n);
    for j in 0..n {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for i in 0..n {
            let (odd, even) = (2 * i + 1, 2 * i + 2);
            match m.get(i, j) {
                1 => {
                    a.push(odd);
                    b.push(even);
                }
                -1 => {
                    a.push(even);
                    b.push(odd);
                }
                _ => {}
            }
        }
        if !a.is_empty() {
            graphs.push(BipartiteGraph::new(a, b)?);
        }
    }
    Cover::new(2 * n, graphs)
}

/// The `n − 1` stars `({i}, {i+1, .., n})`, an exact decomposition of `K_n`.
pub fn star_decomposition(n: usize) -> Result<Cover, CoverError> {
    if n < 2 {
        return Err(CoverError::NTooSmall(n));
    }
    let graphs = (1..n).map(|i| BipartiteGraph::new(vec![i], (i + 1..=n).collect()).expect("valid star")).collect();
    Cover::new(n, graphs)
}

/// Removes vertex `v`, drops graphs that lose a whole side, and relabels the
/// remaining vertices to `1..=n−1` preserving order.
pub fn delete_vertex(c: &Cover, v: usize) -> Result<Cover, CoverError> {
    if v == 0 || v > c.n {
        return Err(CoverError::VertexOutOfRange { v, n: c.n });
    }
    let relabel = |side: &[usize]| -> Vec<usize> {
        side.iter().filter(|&&u| u != v).map(|&u| if u > v { u - 1 } else { u }).collect()
    };
    let graphs = c.graphs.iter().filter_map(|g| BipartiteGraph::new(relabel(&g.a), relabel(&g.b)).ok()).collect();
    Cover::new(c.n - 1, graphs)
}

/// The multiplicity condition a cover must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "p")]
pub enum Mode {
    ExactOnce,
    Odd,
    OneModP(u64),
}

impl Mode {
    pub fn accepts(&self, count: u64) -> bool {
        match self {
            Mode::ExactOnce => count == 1,
            Mode::Odd => count % 2 == 1,
            Mode::OneModP(p) => count % p == 1 % p,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::ExactOnce => write!(f, "exact-once"),
            Mode::Odd => write!(f, "odd"),
            Mode::OneModP(p) => write!(f, "one-mod-{p}"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    /// `exact-once`, `odd`, or `one-mod-<p>` with `p ≥ 2`.
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "exact-once" => Ok(Mode::ExactOnce),
            "odd" => Ok(Mode::Odd),
            _ => match s.strip_prefix("one-mod-").map(str::parse::<u64>) {
                Some(Ok(p)) if p >= 2 => Ok(Mode::OneModP(p)),
                Some(Ok(p)) => Err(CoverError::BadModulus(p).to_string()),
                _ => Err(format!("unknown mode {s:?} (expected exact-once, odd or one-mod-<p>)")),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub mode: Mode,
    pub ok: bool,
    /// Every edge `(u, v)`, `u < v`, of `K_n`, plus any edge a graph covers
    /// outside `K_n`.
    pub edge_counts: BTreeMap<(usize, usize), u64>,
    pub violations: Vec<(usize, usize)>,
}

impl MultiplicityReport {
    /// The per-edge counts are included only when `full` is set.
    pub fn to_json(&self, full: bool) -> Value {
        let mut v = json!({
            "mode": self.mode.to_string(),
            "ok": self.ok,
            "violations": self.violations.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        });
        if full {
            v["edge_counts"] = self.edge_counts.iter().map(|(&(a, b), &c)| json!([a, b, c])).collect::<Vec<_>>().into();
        }
        v
    }

    pub fn count(&self, u: usize, v: usize) -> u64 {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_counts.get(&key).copied().unwrap_or(0)
    }
}

/// Tallies every edge of `K_n` against the cover and applies `mode`. Edges
/// covered by the graphs but lying outside `K_n` are violations.
pub fn verify_cover(c: &Cover, n: usize, mode: Mode) -> MultiplicityReport {
    let span = n.max(c.graphs.iter().map(BipartiteGraph::max_vertex).max().unwrap_or(0));
    let mut dense = vec![0u64; (span + 1) * (span + 1)];
    for g in &c.graphs {
        for &u in &g.a {
            for &v in &g.b {
                let (x, y) = if u < v { (u, v) } else { (v, u) };
                dense[x * (span + 1) + y] += 1;
            }
        }
    }
    let mut edge_counts = BTreeMap::new();
    let mut violations = Vec::new();
    for x in 1..=span {
        for y in x + 1..=span {
            let count = dense[x * (span + 1) + y];
            let inside = y <= n;
            if !inside && count == 0 {
                continue;
            }
            edge_counts.insert((x, y), count);
            if !inside || !mode.accepts(count) {
                violations.push((x, y));
            }
        }
    }
    MultiplicityReport { mode, ok: violations.is_empty(), edge_counts, violations }
}
