//! Square {−1, 0, 1} matrices: the power-of-two skew Hadamard family,
//! conference matrices derived from it, symmetric-design matrices over
//! projective planes, and verifiers for the "good" conditions that make the
//! pairs construction produce odd (or 1 mod p) covers.
//!
//! ```
//! use bicover::matrices::{good_from_skew, is_good, skew_family_power2};
//!
//! let m = good_from_skew(&skew_family_power2(4).unwrap()).unwrap();
//! assert_eq!(m.row(0), &[0, 1, 1, -1]);
//! assert!(is_good(&m).ok);
//! ```

mod design;
mod good;
mod skew;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use design::{projective_plane, symmetric_design_matrix, Congruence, PlaneDesc};
pub use good::{is_good, is_good_for_p, Condition, Failure, GoodVerdict};
pub use skew::{good_from_skew, skew_family_power2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquareMatrix,
    #[error("entry {value} at ({row}, {col}) is not in {{-1, 0, 1}}")]
    BadEntry { row: usize, col: usize, value: i64 },
    #[error("order {0} is not a power of two (>= 2)")]
    NotPowerOfTwo(usize),
    #[error("matrix is not skew Hadamard")]
    NotSkewHadamard,
    #[error("order {0} is not divisible by 4")]
    OrderNot0Mod4(usize),
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("q = {q} violates the required congruence ({need})")]
    CongruenceViolated { q: u64, need: String },
    #[error("p = {0} must be odd")]
    PEven(u64),
    #[error("p = {0} must be at least 3")]
    PTooSmall(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A square matrix with entries in {−1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct SignMatrix {
    rows: Vec<Vec<i8>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    order: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<MatrixJson> for SignMatrix {
    type Error = MatrixError;
    fn try_from(j: MatrixJson) -> Result<Self, MatrixError> {
        let m = SignMatrix::from_i64_rows(&j.rows)?;
        if m.order() != j.order {
            return Err(MatrixError::Parse(format!("declared order {} but {} rows", j.order, m.order())));
        }
        Ok(m)
    }
}

impl From<SignMatrix> for MatrixJson {
    fn from(m: SignMatrix) -> Self {
        MatrixJson { order: m.order(), rows: m.rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect() }
    }
}

impl SignMatrix {
    /// Validates shape and entries.
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<SignMatrix, MatrixError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquareMatrix);
            }
            if let Some(j) = row.iter().position(|x| !(-1..=1).contains(x)) {
                return Err(MatrixError::BadEntry { row: i, col: j, value: row[j] as i64 });
            }
        }
        Ok(SignMatrix { rows })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<SignMatrix, MatrixError> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquareMatrix);
            }
            let mut r = Vec::with_capacity(n);
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(MatrixError::BadEntry { row: i, col: j, value: v });
                }
                r.push(v as i8);
            }
            out.push(r);
        }
        Ok(SignMatrix { rows: out })
    }

    pub fn identity(n: usize) -> SignMatrix {
        SignMatrix::from_fn(n, |i, j| i8::from(i == j))
    }

    pub fn zeros(n: usize) -> SignMatrix {
        SignMatrix::from_fn(n, |_, _| 0)
    }

    /// Builds a matrix from an entry function. Panics on entries outside
    /// {−1, 0, 1}.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i8) -> SignMatrix {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        SignMatrix::from_rows(rows).expect("entry function produced a non-sign entry")
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn transpose(&self) -> SignMatrix {
        SignMatrix::from_fn(self.order(), |i, j| self.rows[j][i])
    }

    pub fn negate_row(&mut self, i: usize) {
        self.rows[i].iter_mut().for_each(|x| *x = -*x);
    }

    pub fn negate_col(&mut self, j: usize) {
        self.rows.iter_mut().for_each(|r| r[j] = -r[j]);
    }

    /// Integer product `self * other^T`.
    pub fn gram_with(&self, other: &SignMatrix) -> Vec<Vec<i64>> {
        self.rows.iter().map(|a| other.rows.iter().map(|b| dot(a, b)).collect()).collect()
    }

    /// One row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SignMatrix, MatrixError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| MatrixError::Parse(format!("bad entry {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignMatrix::from_i64_rows(&rows)
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SignMatrix {
    type Err = MatrixError;
    fn from_str(s: &str) -> Result<Self, MatrixError> {
        SignMatrix::from_text(s)
    }
}

pub(crate) fn dot(a: &[i8], b: &[i8]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = SignMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(m.to_text(), "0 1\n-1 0\n");
        assert_eq!(SignMatrix::from_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn json_round_trip() {
        let m = SignMatrix::identity(3);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"order":3,"rows":[[1,0,0],[0,1,0],[0,0,1]]}"#);
        assert_eq!(serde_json::from_str::<SignMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<SignMatrix>(r#"{"order":2,"rows":[[1,0],[0,1],[1,1]]}"#).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(SignMatrix::from_rows(vec![vec![1, 0]]).unwrap_err(), MatrixError::NotSquareMatrix);
        assert!(matches!(SignMatrix::from_text("1 2\n0 1"), Err(MatrixError::BadEntry { row: 0, col: 1, value: 2 })));
    }
}
