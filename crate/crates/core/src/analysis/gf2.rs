//! Over GF(2) the column equations become statements about integer weights.
//! Lifting each column to a 0/1 vector of `Z^r`,
//!
//! * the diagonal equation says `|y_j| ≡ 0 or 3 (mod 4)`;
//! * the cross equation says `y_i·y_j ≡ (1 + |y_i|)(1 + |y_j|) (mod 2)`;
//! * consequently the columns are linearly independent over GF(2), except
//!   possibly for the single dependency "the even-weight columns sum to
//!   zero", which needs an odd number of them.
//!
//! Together these force `r ≥ ⌊n/2⌋`, and `r ≥ ⌈n/2⌉` when `n ≡ 3 (mod 4)`.

use serde::Serialize;
use serde_json::json;

use crate::fields::{Field, FieldDesc};
use crate::linalg::gf2_kernel;

use super::engine::{run, Aggregate, SearchOptions};
use super::substitution::{substitution_vanishes, HomSubstitution};
use super::{guard, AnalysisError};

/// Coefficients of a GF(2) dependency `Σ α_i w_i + Σ β_k e_k = 0`, split
/// into odd-weight columns `w` and even-weight columns `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dependency {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gf2Diagnostics {
    /// `|y_j| mod 4`.
    pub weights_mod4: Vec<u8>,
    pub square_ok: bool,
    /// `(i, j, y_i·y_j mod 2)` for `i < j` (0-based).
    pub dot_parities: Vec<(usize, usize, u8)>,
    pub cross_ok: bool,
    /// Columns of odd weight.
    pub odd_columns: Vec<usize>,
    /// Columns of even weight.
    pub even_columns: Vec<usize>,
    pub s: usize,
    pub t: usize,
    /// Dimension of the space of GF(2) dependencies among the columns.
    pub kernel_dim: usize,
    /// The dependency, when there is exactly one.
    pub dependency: Option<Dependency>,
    /// No dependency, or only `Σ e_k = 0` with `t` odd.
    pub claim_ok: bool,
}

impl Gf2Diagnostics {
    pub fn ok(&self) -> bool {
        self.square_ok && self.cross_ok && self.claim_ok
    }
}

/// `|y| ≡ y·y (mod 4)`, where `|y|` counts the odd entries of `y`.
pub fn weight_mod4_matches_dot(y: &[i64]) -> bool {
    let weight = y.iter().filter(|v| v.rem_euclid(2) == 1).count() as i64;
    let dot: i64 = y.iter().map(|v| v.rem_euclid(4) * v.rem_euclid(4)).sum();
    (weight - dot).rem_euclid(4) == 0
}

fn is_gf2(f: &Field) -> bool {
    *f.desc() == FieldDesc::Prime { p: 2 }
}

/// Bit `r − 1 − i` holds row `i`.
fn pack_columns(s: &HomSubstitution) -> Vec<u64> {
    let r = s.r();
    s.columns()
        .iter()
        .map(|c| c.iter().enumerate().fold(0u64, |acc, (i, x)| acc | (u64::from(!x.is_zero()) << (r - 1 - i))))
        .collect()
}

fn diag_ok(y: u64) -> bool {
    matches!(y.count_ones() % 4, 0 | 3)
}

fn cross_ok(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == (1 + a.count_ones()) * (1 + b.count_ones()) % 2
}

pub fn gf2_diagnostics(s: &HomSubstitution) -> Result<Gf2Diagnostics, AnalysisError> {
    if !is_gf2(s.field()) {
        return Err(AnalysisError::PreconditionViolated(format!("field is {}, not GF(2)", s.field())));
    }
    if s.r() > 64 {
        return Err(AnalysisError::PreconditionViolated("r > 64".into()));
    }
    if s.free() > 64 {
        return Err(AnalysisError::PreconditionViolated("more than 64 columns".into()));
    }
    if !substitution_vanishes(s) {
        return Err(AnalysisError::PreconditionViolated("substitution does not vanish".into()));
    }
    let cols = pack_columns(s);
    let weights_mod4: Vec<u8> = cols.iter().map(|y| (y.count_ones() % 4) as u8).collect();
    let square_ok = cols.iter().all(|&y| diag_ok(y));
    let mut dot_parities = Vec::new();
    let mut all_cross = true;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            dot_parities.push((i, j, ((cols[i] & cols[j]).count_ones() % 2) as u8));
            all_cross &= cross_ok(cols[i], cols[j]);
        }
    }
    let (odd_columns, even_columns): (Vec<usize>, Vec<usize>) =
        (0..cols.len()).partition(|&j| cols[j].count_ones() % 2 == 1);
    let (s_len, t) = (odd_columns.len(), even_columns.len());

    let kernel = gf2_kernel(&cols);
    let dependency = (kernel.len() == 1).then(|| {
        let bit = |j: usize| ((kernel[0] >> j) & 1) as u8;
        Dependency {
            alpha: odd_columns.iter().map(|&j| bit(j)).collect(),
            beta: even_columns.iter().map(|&j| bit(j)).collect(),
        }
    });
    let claim_ok = match &dependency {
        None => kernel.is_empty(),
        Some(d) => t % 2 == 1 && d.alpha.iter().all(|&a| a == 0) && d.beta.iter().all(|&b| b == 1),
    };
    Ok(Gf2Diagnostics {
        weights_mod4,
        square_ok,
        dot_parities,
        cross_ok: all_cross,
        odd_columns,
        even_columns,
        s: s_len,
        t,
        kernel_dim: kernel.len(),
        dependency,
        claim_ok,
    })
}

/// Prefix count cap: the first column's value range is split into at most
/// this many chunks.
const MAX_PREFIXES: u64 = 4096;

/// Searches all `r × (n − r)` GF(2) matrices for a vanishing substitution.
///
/// Matrices are ordered column-major: column 1 first, each column read as
/// an `r`-bit number with row 1 most significant. The first vanishing matrix
/// in that order is returned. Columns failing the diagonal equation, or a
/// cross equation with an earlier column, are pruned.
///
/// Guard: `r·(n − r) ≤ 30`.
pub fn search_vanishing_gf2(
    n: usize,
    r: usize,
    opts: &SearchOptions,
) -> Result<Option<HomSubstitution>, AnalysisError> {
    if r > n {
        return Err(AnalysisError::PreconditionViolated(format!("r = {r} > n = {n}")));
    }
    let m = n - r;
    guard(opts, r * m <= 30, || format!("2^{} matrices (r(n-r) must be at most 30)", r * m))?;
    if r > 63 {
        return Err(AnalysisError::SearchSpaceTooLarge(format!("r = {r} exceeds 63")));
    }
    let gf2 = Field::prime(2)?;
    let build = |cols: &[u64]| {
        let cols: Vec<Vec<_>> =
            cols.iter().map(|&y| (0..r).map(|i| gf2.from_i64(((y >> (r - 1 - i)) & 1) as i64)).collect()).collect();
        HomSubstitution::from_columns(&gf2, n, r, &cols)
    };
    if m == 0 {
        return build(&[]).map(Some);
    }

    let values = 1u64 << r;
    let chunk = values.div_ceil(MAX_PREFIXES);
    let count = values.div_ceil(chunk) as usize;
    let params = json!({ "n": n, "r": r });
    let found = run("vanishing-gf2", params, count, Aggregate::FirstPrefix, opts, |prefix| {
        let lo = prefix as u64 * chunk;
        let hi = (lo + chunk).min(values);
        let mut cols = Vec::with_capacity(m);
        (lo..hi).filter(|&y| diag_ok(y)).find_map(|y| {
            cols.clear();
            cols.push(y);
            extend(&mut cols, m, values).then(|| cols.clone())
        })
    })?;
    found.map(|(_, cols)| build(&cols)).transpose()
}

fn extend(cols: &mut Vec<u64>, m: usize, values: u64) -> bool {
    if cols.len() == m {
        return true;
    }
    for y in 0..values {
        if diag_ok(y) && cols.iter().all(|&x| cross_ok(x, y)) {
            cols.push(y);
            if extend(cols, m, values) {
                return true;
            }
            cols.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::extract_vanishing_substitution;
    use crate::circuits::circuit_from_cover;
    use crate::covers::pairs_construction;
    use crate::matrices::{good_from_skew, skew_family_power2};
    use proptest::prelude::*;

    fn opts() -> SearchOptions {
        SearchOptions::with_workers(2)
    }

    #[test]
    fn mod4_identity_exhaustive() {
        for len in 0..=12 {
            for bits in 0u32..(1 << len) {
                let y: Vec<i64> = (0..len).map(|i| i64::from((bits >> i) & 1)).collect();
                assert!(weight_mod4_matches_dot(&y));
            }
        }
    }

    #[test]
    fn diagnostics_of_skew4_substitution() {
        let gf2 = Field::prime(2).unwrap();
        let cover = pairs_construction(&good_from_skew(&skew_family_power2(4).unwrap()).unwrap()).unwrap();
        let s = extract_vanishing_substitution(&circuit_from_cover(&cover, &gf2)).unwrap();
        let d = gf2_diagnostics(&s).unwrap();
        assert!(d.weights_mod4.iter().all(|&w| w == 0 || w == 3));
        assert!(d.ok());
        assert_eq!(d.s + d.t, 4);
    }

    #[test]
    fn diagnostics_of_zero_substitution() {
        let gf2 = Field::prime(2).unwrap();
        let s = HomSubstitution::new(&gf2, 4, vec![vec![gf2.zero()]; 3]).unwrap();
        let d = gf2_diagnostics(&s).unwrap();
        assert_eq!(d.weights_mod4, vec![0]);
        assert_eq!((d.s, d.t), (0, 1));
        // the zero column is the dependency Σ e_k = 0 with t = 1
        assert_eq!(d.dependency, Some(Dependency { alpha: vec![], beta: vec![1] }));
        assert!(d.ok());
    }

    #[test]
    fn diagnostics_preconditions() {
        let q = Field::rational();
        let s = HomSubstitution::new(&q, 2, vec![vec![q.zero()]]).unwrap();
        assert!(matches!(gf2_diagnostics(&s), Err(AnalysisError::PreconditionViolated(_))));
        let gf2 = Field::prime(2).unwrap();
        let s = HomSubstitution::new(&gf2, 3, vec![vec![gf2.one(), gf2.zero()]]).unwrap();
        assert!(matches!(gf2_diagnostics(&s), Err(AnalysisError::PreconditionViolated(_))));
    }

    #[test]
    fn search_examples() {
        let s = search_vanishing_gf2(2, 1, &opts()).unwrap().unwrap();
        assert_eq!(s.matrix(), &[vec![Field::prime(2).unwrap().zero()]]);
        assert!(search_vanishing_gf2(6, 2, &opts()).unwrap().is_none());
        assert!(search_vanishing_gf2(7, 3, &opts()).unwrap().is_none());
    }

    #[test]
    fn search_results_satisfy_diagnostics() {
        let mut found = 0;
        for n in 2..=10usize {
            for r in 0..n {
                if r * (n - r) > 20 {
                    continue;
                }
                if let Some(s) = search_vanishing_gf2(n, r, &opts()).unwrap() {
                    found += 1;
                    assert!(substitution_vanishes(&s), "({n},{r})");
                    assert!(gf2_diagnostics(&s).unwrap().ok(), "({n},{r})");
                }
            }
        }
        assert!(found > 10);
    }

    #[test]
    fn search_below_bound_is_empty() {
        // r < ⌊n/2⌋, or r < ⌈n/2⌉ for n ≡ 3 mod 4
        for n in 2..=10usize {
            let bound = if n % 4 == 3 { n.div_ceil(2) } else { n / 2 };
            for r in 0..bound {
                if r * (n - r) <= 30 {
                    assert!(search_vanishing_gf2(n, r, &opts()).unwrap().is_none(), "({n},{r})");
                }
            }
        }
    }

    #[test]
    fn search_guard() {
        assert!(matches!(
            search_vanishing_gf2(12, 6, &SearchOptions::default()),
            Err(AnalysisError::SearchSpaceTooLarge(_))
        ));
    }

    #[test]
    fn worker_count_does_not_change_witness() {
        let a = search_vanishing_gf2(9, 4, &SearchOptions::with_workers(1)).unwrap();
        let b = search_vanishing_gf2(9, 4, &SearchOptions::with_workers(4)).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 256, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]

        #[test]
        fn mod4_identity_on_integers(y in prop::collection::vec(-50i64..50, 0..16)) {
            prop_assert!(weight_mod4_matches_dot(&y));
        }
    }
}
