//! Equidistant-point systems. With `⟨v, w⟩ = vᵀ (J − I) w` on `F^dim`, find
//! `k + 1` vectors with
//!
//! ```text
//! ⟨y_j, y_j⟩ + 2·1ᵀy_j = 0            (every j)
//! ⟨y_j, y_l⟩ + 1ᵀy_j + 1ᵀy_l = −1     (every j < l)
//! ```
//!
//! These are the column equations of a vanishing substitution for
//! `S_{2k}^2` with `r = k − 1` (even variant, `dim = k − 1`) or for
//! `S_{2k+1}^2` with `r = k` (odd variant, `dim = k`). Subtracting pairs
//! gives `⟨y_j − y_l, y_j − y_l⟩ = 2`: the points are pairwise at "distance"
//! √2, which is impossible in the even variant when `k ≠ −1` in `F`, and in
//! the odd variant (where the points also share a common "radius") when
//! `k ≠ 0, ±1`.
//!
//! In characteristic 2 the diagonal equation degenerates to `0 = 0`, so the
//! correspondence with vanishing substitutions needs an odd characteristic.

use std::fmt;

use serde_json::{json, Value};

use crate::fields::{Field, FieldElem};

use super::engine::{run, Aggregate, SearchOptions};
use super::substitution::{off_diagonal_form, HomSubstitution};
use super::{guard, AnalysisError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Even,
    Odd,
}

impl Variant {
    pub fn dim(self, k: usize) -> Option<usize> {
        match self {
            Variant::Even => k.checked_sub(1),
            Variant::Odd => Some(k),
        }
    }

    /// `n` of the matching `S_n^2`.
    pub fn n(self, k: usize) -> usize {
        match self {
            Variant::Even => 2 * k,
            Variant::Odd => 2 * k + 1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Even => "even",
            Variant::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquidistantSolution {
    pub variant: Variant,
    pub k: usize,
    pub vectors: Vec<Vec<FieldElem>>,
}

impl EquidistantSolution {
    /// The same data read as substitution columns.
    pub fn to_substitution(&self, field: &Field) -> Result<HomSubstitution, AnalysisError> {
        let n = self.variant.n(self.k);
        HomSubstitution::from_columns(field, n, n - (self.k + 1), &self.vectors)
    }

    pub fn to_json(&self) -> Value {
        let vs: Vec<Vec<Value>> = self.vectors.iter().map(|v| v.iter().map(FieldElem::to_json).collect()).collect();
        json!({ "variant": self.variant.to_string(), "k": self.k, "vectors": vs })
    }
}

/// A vector passing the diagonal equation, with its coordinate sum.
struct Candidate {
    v: Vec<FieldElem>,
    sum: FieldElem,
}

const MAX_PREFIXES: u64 = 4096;

/// Exhaustive search in lexicographic order of element indices (see
/// [`Field::element_at`]); returns the first solution.
///
/// Guard: `|F|^{dim·(k+1)} ≤ 2^26`.
pub fn search_equidistant_system(
    k: usize,
    field: &Field,
    variant: Variant,
    opts: &SearchOptions,
) -> Result<Option<EquidistantSolution>, AnalysisError> {
    let q = field.order().ok_or_else(|| AnalysisError::PreconditionViolated(format!("{field} is not finite")))?;
    let dim =
        variant.dim(k).ok_or_else(|| AnalysisError::PreconditionViolated("the even variant needs k ≥ 1".into()))?;
    let bits = (q as f64).log2() * (dim * (k + 1)) as f64;
    guard(opts, bits <= 26.0 + 1e-9, || format!("|F|^(dim(k+1)) = 2^{bits:.1} exceeds 2^26"))?;
    let total = u32::try_from(dim)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .filter(|&t| t <= 1 << 32)
        .ok_or_else(|| AnalysisError::SearchSpaceTooLarge(format!("{q}^{dim} vectors")))?;

    let two = field.from_i64(2);
    let minus_one = field.from_i64(-1);
    let decode = |mut code: u64| {
        let mut v = vec![field.zero(); dim];
        for slot in v.iter_mut().rev() {
            *slot = field.element_at(code % q);
            code /= q;
        }
        v
    };
    // candidates satisfying the diagonal equation, in code order
    let cands: Vec<(u64, Candidate)> = (0..total)
        .filter_map(|code| {
            let v = decode(code);
            let sum = v.iter().fold(field.zero(), |a, x| a + x);
            (off_diagonal_form(field, &v, &v) + &two * &sum).is_zero().then_some((code, Candidate { v, sum }))
        })
        .collect();
    let compatible = |a: &Candidate, b: &Candidate| off_diagonal_form(field, &a.v, &b.v) + &a.sum + &b.sum == minus_one;

    let chunk = total.div_ceil(MAX_PREFIXES).max(1);
    let count = total.div_ceil(chunk) as usize;
    let params = json!({ "k": k, "field": field.to_json(), "variant": variant.to_string() });
    let found = run("equidistant", params, count, Aggregate::FirstPrefix, opts, |prefix| {
        let (lo, hi) = (prefix as u64 * chunk, (prefix as u64 + 1) * chunk);
        let start = cands.partition_point(|(c, _)| *c < lo);
        let mut chosen = Vec::with_capacity(k + 1);
        (start..cands.len()).take_while(|&i| cands[i].0 < hi).find_map(|i| {
            chosen.clear();
            chosen.push(i);
            extend(&cands, &mut chosen, k + 1, &compatible)
                .then(|| chosen.iter().map(|&c| cands[c].0).collect::<Vec<u64>>())
        })
    })?;
    Ok(found.map(|(_, codes)| EquidistantSolution { variant, k, vectors: codes.into_iter().map(decode).collect() }))
}

/// Extends with strictly increasing candidates: a solution never repeats a
/// vector, and any permutation of a solution is one.
fn extend(
    cands: &[(u64, Candidate)],
    chosen: &mut Vec<usize>,
    want: usize,
    compatible: &impl Fn(&Candidate, &Candidate) -> bool,
) -> bool {
    if chosen.len() == want {
        return true;
    }
    let from = chosen.last().map_or(0, |&i| i + 1);
    for i in from..cands.len() {
        if chosen.iter().all(|&c| compatible(&cands[c].1, &cands[i].1)) {
            chosen.push(i);
            if extend(cands, chosen, want, compatible) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{column_equations, substitution_vanishes};

    fn opts() -> SearchOptions {
        SearchOptions::with_workers(2)
    }

    #[test]
    fn impossible_cases() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(search_equidistant_system(2, &f5, Variant::Odd, &opts()).unwrap(), None);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(search_equidistant_system(2, &f7, Variant::Even, &opts()).unwrap(), None);
        // the rationals stand in for an infinite search space
        assert!(matches!(
            search_equidistant_system(2, &Field::rational(), Variant::Odd, &opts()),
            Err(AnalysisError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn solutions_are_vanishing_substitutions() {
        // k ≡ −1 in GF(3), where the side condition k ≠ ±1 fails
        let f3 = Field::prime(3).unwrap();
        for (k, variant) in [(2, Variant::Odd), (2, Variant::Even), (1, Variant::Odd)] {
            if let Some(sol) = search_equidistant_system(k, &f3, variant, &opts()).unwrap() {
                let s = sol.to_substitution(&f3).unwrap();
                assert!(substitution_vanishes(&s), "k={k} {variant}");
                assert!(column_equations(&s).ok);
            }
        }
    }

    #[test]
    fn guard() {
        let f = Field::prime(13).unwrap();
        assert!(matches!(
            search_equidistant_system(4, &f, Variant::Odd, &SearchOptions::default()),
            Err(AnalysisError::SearchSpaceTooLarge(_))
        ));
    }
}
