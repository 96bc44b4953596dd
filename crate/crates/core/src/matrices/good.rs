use std::fmt;

use serde::Serialize;

use super::{dot, MatrixError, SignMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    RowParity,
    CommonSupport,
    Orthogonality,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::RowParity => "row-parity",
            Condition::CommonSupport => "common-support",
            Condition::Orthogonality => "orthogonality",
        })
    }
}

/// One failed condition with the (0-based) row indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: Condition,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodVerdict {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

impl GoodVerdict {
    fn from_failures(failures: Vec<Failure>) -> GoodVerdict {
        GoodVerdict { ok: failures.is_empty(), failures }
    }

    pub fn has(&self, c: Condition) -> bool {
        self.failures.iter().any(|f| f.condition == c)
    }
}

/// Row support must be ≡ `support_rem` mod `support_mod`, pairwise common
/// support ≡ `pair_rem` mod `pair_mod`, and distinct rows orthogonal.
fn check(m: &SignMatrix, support_mod: i64, support_rem: i64, pair_mod: i64, pair_rem: i64) -> GoodVerdict {
    let n = m.order();
    let supports: Vec<Vec<bool>> = m.rows().iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect();
    let mut failures = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        let w = s.iter().filter(|&&b| b).count() as i64;
        if w.rem_euclid(support_mod) != support_rem {
            failures.push(Failure { condition: Condition::RowParity, witness: vec![i] });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let common = supports[i].iter().zip(&supports[j]).filter(|(a, b)| **a && **b).count() as i64;
            if common.rem_euclid(pair_mod) != pair_rem {
                failures.push(Failure { condition: Condition::CommonSupport, witness: vec![i, j] });
            }
            if dot(m.row(i), m.row(j)) != 0 {
                failures.push(Failure { condition: Condition::Orthogonality, witness: vec![i, j] });
            }
        }
    }
    GoodVerdict::from_failures(failures)
}

/// Odd row support, pairwise common support ≡ 2 mod 4, rows orthogonal over
/// the integers.
pub fn is_good(m: &SignMatrix) -> GoodVerdict {
    check(m, 2, 1, 4, 2)
}

/// Row support ≡ 1 mod p, pairwise common support ≡ 2 mod 2p, rows
/// orthogonal over the integers.
pub fn is_good_for_p(m: &SignMatrix, p: u64) -> Result<GoodVerdict, MatrixError> {
    if p.is_multiple_of(2) {
        return Err(MatrixError::PEven(p));
    }
    if p < 3 {
        return Err(MatrixError::PTooSmall(p));
    }
    let p = p as i64;
    Ok(check(m, p, 1, 2 * p, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew4() -> SignMatrix {
        SignMatrix::from_rows(vec![vec![0, 1, 1, -1], vec![-1, 0, 1, 1], vec![-1, -1, 0, -1], vec![1, -1, 1, 0]])
            .unwrap()
    }

    #[test]
    fn skew4_is_good() {
        assert!(is_good(&skew4()).ok);
    }

    #[test]
    fn exchange_matrix_fails_common_support() {
        let m = SignMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let v = is_good(&m);
        assert!(!v.ok);
        assert_eq!(v.failures, vec![Failure { condition: Condition::CommonSupport, witness: vec![0, 1] }]);
    }

    #[test]
    fn skew4_not_good_for_3() {
        let v = is_good_for_p(&skew4(), 3).unwrap();
        assert!(v.has(Condition::RowParity));
        assert!(!v.has(Condition::Orthogonality));
    }

    #[test]
    fn zero_matrix_fails_row_parity_for_3() {
        let v = is_good_for_p(&SignMatrix::zeros(3), 3).unwrap();
        assert!(v.has(Condition::RowParity));
        assert_eq!(is_good_for_p(&SignMatrix::zeros(3), 4).unwrap_err(), MatrixError::PEven(4));
    }
}
