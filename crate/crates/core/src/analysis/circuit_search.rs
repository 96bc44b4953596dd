use std::collections::HashMap;

use serde_json::json;

use crate::circuits::{Circuit, Gate, LinearForm};
use crate::fields::{Field, FieldElem};

use super::engine::{run, Aggregate, SearchOptions};
use super::{guard, AnalysisError};

/// Polynomials of degree ≤ 2 over GF(2) as bitmasks over the monomials
/// `1, X_i, X_i^2, X_i X_j (i < j)`, in that order of bit positions.
struct Monomials {
    n: usize,
    pair: Vec<Vec<usize>>,
}

impl Monomials {
    fn new(n: usize) -> Monomials {
        let mut pair = vec![vec![0; n]; n];
        let mut next = 1 + 2 * n;
        for i in 0..n {
            for j in i + 1..n {
                pair[i][j] = next;
                pair[j][i] = next;
                next += 1;
            }
        }
        Monomials { n, pair }
    }

    fn s2(&self) -> u64 {
        let mut m = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                m |= 1 << self.pair[i][j];
            }
        }
        m
    }

    /// Form code: bit `n` is the coefficient of `X_1`, .., bit 1 that of
    /// `X_n`, bit 0 the constant.
    fn product(&self, a: u32, b: u32) -> u64 {
        let n = self.n;
        let coeff = |code: u32, i: usize| code >> (n - i + 1) & 1 == 1;
        let (ca, cb) = (a & 1 == 1, b & 1 == 1);
        let mut m = u64::from(ca && cb);
        for i in 0..n {
            // X_i · constant
            if (coeff(a, i + 1) && cb) != (coeff(b, i + 1) && ca) {
                m ^= 1 << (1 + i);
            }
            for j in 0..n {
                if coeff(a, i + 1) && coeff(b, j + 1) {
                    m ^= 1 << if i == j { 1 + n + i } else { self.pair[i][j] };
                }
            }
        }
        m
    }
}

fn form(f: &Field, n: usize, code: u32) -> LinearForm {
    let bit = |b: u32| -> FieldElem { f.from_i64(i64::from(code >> b & 1)) };
    LinearForm { coeffs: (1..=n).map(|i| bit((n - i + 1) as u32)).collect(), constant: bit(0) }
}

/// Minimum number of two-form gates in a GF(2) circuit for `S_n^2`.
///
/// Every product of two nonzero forms is enumerated (keeping, for each
/// distinct polynomial, its least pair of form codes); a circuit with `r`
/// gates is then a set of `r` distinct products summing to `S_n^2`. Sets are
/// searched as increasing tuples of product bitmasks, the last member
/// looked up directly, so the witness is the least such tuple.
///
/// Guards: `n ≤ 5` (`n ≤ 6` when homogeneous) and `r_max ≤ 3`.
pub fn search_min_circuit_gf2(
    n: usize,
    r_max: usize,
    homogeneous_only: bool,
    opts: &SearchOptions,
) -> Result<(usize, Circuit), AnalysisError> {
    let n_cap = if homogeneous_only { 6 } else { 5 };
    guard(opts, n <= n_cap, || format!("n = {n} (at most {n_cap})"))?;
    guard(opts, r_max <= 3, || format!("r_max = {r_max} (at most 3)"))?;
    if n > 9 {
        return Err(AnalysisError::SearchSpaceTooLarge(format!("n = {n} exceeds 9")));
    }
    if r_max > 3 {
        // deeper levels would need a different enumeration
        return Err(AnalysisError::SearchSpaceTooLarge(format!("r_max = {r_max} exceeds 3")));
    }
    let gf2 = Field::prime(2)?;
    let mons = Monomials::new(n);
    let target = mons.s2();
    let build = |pairs: &[(u32, u32)]| {
        let gates = pairs.iter().map(|&(a, b)| Gate { forms: vec![form(&gf2, n, a), form(&gf2, n, b)] }).collect();
        Circuit::new(&gf2, n, gates).map_err(AnalysisError::from)
    };
    if target == 0 {
        return Ok((0, build(&[])?));
    }

    let codes: Vec<u32> = (1..1u32 << (n + 1)).filter(|c| !homogeneous_only || c & 1 == 0).collect();
    let mut least: HashMap<u64, (u32, u32)> = HashMap::new();
    for (i, &a) in codes.iter().enumerate() {
        for &b in &codes[i..] {
            least.entry(mons.product(a, b)).or_insert((a, b));
        }
    }
    let mut products: Vec<u64> = least.keys().copied().collect();
    products.sort_unstable();

    let params = json!({ "n": n, "r_max": r_max, "homogeneous": homogeneous_only });
    let found = run("min-circuit-gf2", params, products.len(), Aggregate::Least, opts, |i| {
        let g1 = products[i];
        let rest = target ^ g1;
        if rest == 0 {
            return Some((1, vec![g1]));
        }
        if r_max >= 2 && rest > g1 && least.contains_key(&rest) {
            return Some((2, vec![g1, rest]));
        }
        if r_max >= 3 {
            for &g2 in &products[i + 1..] {
                let g3 = rest ^ g2;
                if g3 > g2 && least.contains_key(&g3) {
                    return Some((3, vec![g1, g2, g3]));
                }
            }
        }
        None
    })?;
    match found {
        Some((_, (r, polys))) if r <= r_max => {
            let pairs: Vec<(u32, u32)> = polys.iter().map(|p| least[p]).collect();
            Ok((r, build(&pairs)?))
        }
        _ => Err(AnalysisError::Exceeded { r_max }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::computes_s2;

    fn opts() -> SearchOptions {
        SearchOptions::with_workers(2)
    }

    #[test]
    fn products_match_expansion() {
        let gf2 = Field::prime(2).unwrap();
        let n = 3;
        let mons = Monomials::new(n);
        for a in 1..16u32 {
            for b in 1..16u32 {
                let c = Circuit::new(&gf2, n, vec![Gate { forms: vec![form(&gf2, n, a), form(&gf2, n, b)] }]).unwrap();
                let p = crate::circuits::expand(&c).unwrap();
                assert_eq!(p.num_terms(), mons.product(a, b).count_ones() as usize, "{a} {b}");
            }
        }
    }

    #[test]
    fn small_values() {
        let (r, c) = search_min_circuit_gf2(2, 3, true, &opts()).unwrap();
        assert_eq!(r, 1);
        assert!(computes_s2(&c).unwrap().ok);
        let (r, c) = search_min_circuit_gf2(3, 3, true, &opts()).unwrap();
        assert_eq!(r, 2);
        assert!(computes_s2(&c).unwrap().ok);
        assert!(c.is_homogeneous());
        let (r, c) = search_min_circuit_gf2(4, 3, false, &opts()).unwrap();
        assert!((2..=3).contains(&r));
        assert!(computes_s2(&c).unwrap().ok);
        assert_eq!(search_min_circuit_gf2(1, 0, false, &opts()).unwrap().0, 0);
    }

    #[test]
    fn exceeded_and_guards() {
        assert_eq!(search_min_circuit_gf2(3, 1, true, &opts()).unwrap_err(), AnalysisError::Exceeded { r_max: 1 });
        assert!(matches!(
            search_min_circuit_gf2(6, 3, false, &SearchOptions::default()),
            Err(AnalysisError::SearchSpaceTooLarge(_))
        ));
    }
}
