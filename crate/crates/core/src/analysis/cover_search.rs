use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::json;

use crate::covers::{BipartiteGraph, Cover, Mode};
use crate::linalg::{gf2_rank, rank_mod_p};

use super::engine::{run, Aggregate, SearchOptions};
use super::{guard, AnalysisError};

/// Stand-in for rank over the rationals: rank mod a prime never exceeds it,
/// so pruning on it stays sound.
const RATIONAL_PROXY_PRIME: u64 = 2_147_483_647;

#[derive(Clone)]
enum Residual {
    /// Edges still owed a cover (exact-once) or of even parity (odd).
    Mask(u64),
    /// Per-edge `1 − count mod p`.
    Counts(Vec<u8>),
}

struct Ctx {
    n: usize,
    mode: Mode,
    edges: Vec<(usize, usize)>,
    masks: Vec<u64>,
    graphs: Vec<BipartiteGraph>,
    by_mask: HashMap<u64, usize>,
    covering: Vec<Vec<usize>>,
}

impl Ctx {
    fn new(n: usize, mode: Mode) -> Ctx {
        let mut edges = Vec::new();
        let mut index = vec![vec![0usize; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                index[u][v] = edges.len();
                edges.push((u, v));
            }
        }
        // sides as vertex masks, smallest vertex on side A
        let mut graphs: Vec<BipartiteGraph> = Vec::new();
        let mut labels = vec![0u8; n];
        loop {
            let a: Vec<usize> = (0..n).filter(|&i| labels[i] == 1).map(|i| i + 1).collect();
            let b: Vec<usize> = (0..n).filter(|&i| labels[i] == 2).map(|i| i + 1).collect();
            if !a.is_empty() && !b.is_empty() && a[0] < b[0] {
                graphs.push(BipartiteGraph::new(a, b).expect("disjoint nonempty sides"));
            }
            let Some(i) = labels.iter().position(|&l| l < 2) else { break };
            labels[i] += 1;
            labels[..i].iter_mut().for_each(|l| *l = 0);
        }
        graphs.sort();
        let masks: Vec<u64> = graphs
            .iter()
            .map(|g| {
                let mut m = 0u64;
                for &x in g.a() {
                    for &y in g.b() {
                        let (u, v) = (x.min(y) - 1, x.max(y) - 1);
                        m |= 1 << index[u][v];
                    }
                }
                m
            })
            .collect();
        let by_mask = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let covering =
            (0..edges.len()).map(|e| (0..masks.len()).filter(|&g| masks[g] >> e & 1 == 1).collect()).collect();
        Ctx { n, mode, edges, masks, graphs, by_mask, covering }
    }

    fn full(&self) -> u64 {
        if self.edges.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    fn start(&self) -> Residual {
        match self.mode {
            Mode::ExactOnce | Mode::Odd => Residual::Mask(self.full()),
            Mode::OneModP(p) => Residual::Counts(vec![(1 % p) as u8; self.edges.len()]),
        }
    }

    fn first_open(&self, s: &Residual) -> Option<usize> {
        match s {
            Residual::Mask(m) => (*m != 0).then(|| m.trailing_zeros() as usize),
            Residual::Counts(c) => c.iter().position(|&x| x != 0),
        }
    }

    fn apply(&self, s: &Residual, g: usize) -> Option<Residual> {
        let gm = self.masks[g];
        match (s, self.mode) {
            (Residual::Mask(m), Mode::ExactOnce) => (gm & !m == 0).then_some(Residual::Mask(m & !gm)),
            (Residual::Mask(m), _) => Some(Residual::Mask(m ^ gm)),
            (Residual::Counts(c), Mode::OneModP(p)) => {
                let p = p as u8;
                let mut c = c.clone();
                for (e, x) in c.iter_mut().enumerate() {
                    if gm >> e & 1 == 1 {
                        *x = (*x + p - 1) % p;
                    }
                }
                Some(Residual::Counts(c))
            }
            (Residual::Counts(_), _) => unreachable!("count residuals only arise modulo p"),
        }
    }

    /// The graph that alone settles `s`, if any.
    fn closing(&self, s: &Residual) -> Option<usize> {
        let m = match s {
            Residual::Mask(m) => *m,
            Residual::Counts(c) => {
                if c.iter().any(|&x| x > 1) {
                    return None;
                }
                c.iter().enumerate().fold(0u64, |m, (e, &x)| m | u64::from(x) << e)
            }
        };
        self.by_mask.get(&m).copied()
    }

    /// Each bipartite graph adds a rank-2 symmetric matrix `abᵀ + baᵀ`.
    fn rank(&self, s: &Residual) -> usize {
        match (s, self.mode) {
            (Residual::Mask(m), Mode::Odd) => {
                let mut rows = vec![0u64; self.n];
                for (e, &(u, v)) in self.edges.iter().enumerate() {
                    if m >> e & 1 == 1 {
                        rows[u] |= 1 << v;
                        rows[v] |= 1 << u;
                    }
                }
                gf2_rank(&rows)
            }
            (Residual::Mask(m), _) => self.dense_rank(|e| m >> e & 1, RATIONAL_PROXY_PRIME),
            (Residual::Counts(c), Mode::OneModP(p)) => self.dense_rank(|e| u64::from(c[e]), p),
            (Residual::Counts(_), _) => unreachable!(),
        }
    }

    fn dense_rank(&self, entry: impl Fn(usize) -> u64, p: u64) -> usize {
        let mut rows = vec![vec![0u64; self.n]; self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let x = entry(e) % p;
            rows[u][v] = x;
            rows[v][u] = x;
        }
        rank_mod_p(rows, p)
    }

    /// Least sorted completion of `chosen` using exactly `left` more graphs.
    fn dfs(&self, s: &Residual, left: usize, chosen: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        let Some(e) = self.first_open(s) else {
            if left == 0 {
                self.offer(chosen, best);
            }
            return;
        };
        if left == 0 || self.rank(s) > 2 * left {
            return;
        }
        if left == 1 {
            if let Some(g) = self.closing(s) {
                // an odd cover never repeats a graph usefully
                if !(self.mode == Mode::Odd && chosen.contains(&g)) {
                    chosen.push(g);
                    self.offer(chosen, best);
                    chosen.pop();
                }
            }
            return;
        }
        for &g in &self.covering[e] {
            if self.mode == Mode::Odd && chosen.contains(&g) {
                continue;
            }
            if let Some(next) = self.apply(s, g) {
                chosen.push(g);
                self.dfs(&next, left - 1, chosen, best);
                chosen.pop();
            }
        }
    }

    fn offer(&self, chosen: &[usize], best: &mut Option<Vec<usize>>) {
        // graphs are indexed in sorted order, so sorting ids sorts the cover
        let mut sorted = chosen.to_vec();
        sorted.sort_unstable();
        if best.as_ref().is_none_or(|b| sorted < *b) {
            *best = Some(sorted);
        }
    }
}

/// Minimum number of complete bipartite graphs covering `K_n` under `mode`,
/// with the lexicographically least sorted witness among minimum covers.
///
/// The search branches on the first edge (in `(u, v)` lexicographic order)
/// whose multiplicity is still wrong, over the graphs covering it, and
/// prunes when the residual adjacency matrix has rank above twice the
/// number of graphs left. Prefixes are the choices for edge `{1, 2}`.
///
/// Guard: `n ≤ 8`.
pub fn search_min_cover(
    n: usize,
    mode: Mode,
    r_max: usize,
    opts: &SearchOptions,
) -> Result<(usize, Cover), AnalysisError> {
    guard(opts, n <= 8, || format!("n = {n} (at most 8)"))?;
    if n > 11 {
        return Err(AnalysisError::SearchSpaceTooLarge(format!("n = {n} exceeds 11 (64 edges)")));
    }
    if let Mode::OneModP(p) = mode {
        if !(2..=255).contains(&p) {
            return Err(AnalysisError::PreconditionViolated(format!("p = {p} must lie in 2..=255")));
        }
    }
    let ctx = Ctx::new(n, mode);
    let to_cover = |ids: &[usize]| {
        Cover::new(n, ids.iter().map(|&g| ctx.graphs[g].clone()).collect())
            .map_err(|e| AnalysisError::InternalInconsistency(e.to_string()))
    };
    let start = ctx.start();
    if ctx.first_open(&start).is_none() {
        return Ok((0, to_cover(&[])?));
    }

    let first = &ctx.covering[0];
    let ceiling = AtomicUsize::new(r_max);
    let params = json!({ "n": n, "mode": mode.to_string(), "r_max": r_max });
    let found = run("min-cover", params, first.len(), Aggregate::Least, opts, |prefix| {
        let g = first[prefix];
        let s = ctx.apply(&start, g)?;
        let mut chosen = vec![g];
        for depth in 1..=ceiling.load(Ordering::Acquire) {
            let mut best = None;
            ctx.dfs(&s, depth - 1, &mut chosen, &mut best);
            if let Some(ids) = best {
                ceiling.fetch_min(depth, Ordering::AcqRel);
                return Some((depth, ids.iter().map(|&i| ctx.graphs[i].clone()).collect::<Vec<_>>()));
            }
        }
        None
    })?;
    match found {
        Some((_, (depth, graphs))) => {
            let cover = Cover::new(n, graphs).map_err(|e| AnalysisError::InternalInconsistency(e.to_string()))?;
            Ok((depth, cover))
        }
        None => Err(AnalysisError::Exceeded { r_max }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::verify_cover;

    fn opts() -> SearchOptions {
        SearchOptions::with_workers(2)
    }

    #[test]
    fn graph_enumeration_count() {
        for n in 1..=6usize {
            let want = (3usize.pow(n as u32) + 1 - 2usize.pow(n as u32 + 1)) / 2;
            assert_eq!(Ctx::new(n, Mode::Odd).graphs.len(), want, "n={n}");
        }
    }

    #[test]
    fn exact_once_is_n_minus_one() {
        for n in 2..=5 {
            let (r, cover) = search_min_cover(n, Mode::ExactOnce, 6, &opts()).unwrap();
            assert_eq!(r, n - 1);
            assert!(verify_cover(&cover, n, Mode::ExactOnce).ok);
        }
    }

    #[test]
    fn small_odd_and_mod3_covers() {
        for (n, mode) in [(4, Mode::Odd), (6, Mode::Odd), (4, Mode::OneModP(3)), (5, Mode::Odd)] {
            let (r, cover) = search_min_cover(n, mode, 5, &opts()).unwrap();
            assert!(r >= n / 2 && r < n, "n={n} {mode}: {r}");
            assert!(verify_cover(&cover, n, mode).ok);
            assert_eq!(cover.graphs().len(), r);
        }
    }

    #[test]
    fn trivial_and_exceeded() {
        assert_eq!(search_min_cover(1, Mode::Odd, 0, &opts()).unwrap().0, 0);
        assert_eq!(search_min_cover(2, Mode::ExactOnce, 1, &opts()).unwrap().0, 1);
        assert_eq!(search_min_cover(5, Mode::ExactOnce, 3, &opts()).unwrap_err(), AnalysisError::Exceeded { r_max: 3 });
        assert!(matches!(
            search_min_cover(9, Mode::Odd, 4, &SearchOptions::default()),
            Err(AnalysisError::SearchSpaceTooLarge(_))
        ));
    }

    #[test]
    fn witness_is_worker_independent() {
        let a = search_min_cover(5, Mode::ExactOnce, 5, &SearchOptions::with_workers(1)).unwrap();
        let b = search_min_cover(5, Mode::ExactOnce, 5, &SearchOptions::with_workers(4)).unwrap();
        assert_eq!(a, b);
    }
}
