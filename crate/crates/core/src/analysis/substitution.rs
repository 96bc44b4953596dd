//! Vanishing substitutions and the column equations that characterise them.
//!
//! A homogeneous substitution keeps `X_1, .., X_{n−r}` free and replaces the
//! last `r` variables by linear forms `ℓ_i = Σ_j L_ij X_j`. Writing `y_j` for
//! column `j` of `L`, `S_n^2` vanishes under the substitution exactly when,
//! with `U` the strictly upper triangular all-ones matrix,
//!
//! ```text
//! 1ᵀy_j + y_jᵀ U y_j = 0                              (every j)
//! 1 + 1ᵀy_i + 1ᵀy_j + y_iᵀ (J − I) y_j = 0            (every i < j)
//! ```
//!
//! These are the coefficients of `X_j^2` and `X_i X_j` in the composed
//! polynomial. Away from characteristic 2 the first is equivalent to
//! `2·1ᵀy_j + y_jᵀ (J − I) y_j = 0`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::circuits::{computes_s2, reference_s2, Circuit, SparsePoly};
use crate::fields::{Field, FieldElem};
use crate::linalg::{rank, rref};

use super::AnalysisError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSubstitution {
    field: Field,
    n: usize,
    r: usize,
    l: Vec<Vec<FieldElem>>,
}

impl HomSubstitution {
    /// `l` is `r × (n − r)`.
    pub fn new(field: &Field, n: usize, l: Vec<Vec<FieldElem>>) -> Result<HomSubstitution, AnalysisError> {
        let r = l.len();
        if r > n {
            return Err(AnalysisError::PreconditionViolated(format!("{r} bound variables but n = {n}")));
        }
        for (i, row) in l.iter().enumerate() {
            if row.len() != n - r {
                return Err(AnalysisError::PreconditionViolated(format!(
                    "row {i} of L has {} entries, expected {}",
                    row.len(),
                    n - r
                )));
            }
            if row.iter().any(|x| x.field() != field) {
                return Err(AnalysisError::PreconditionViolated(format!("row {i} of L is over another field")));
            }
        }
        Ok(HomSubstitution { field: field.clone(), n, r, l })
    }

    /// Builds the substitution from its columns `y_1, .., y_{n−r}`, each of
    /// length `r`.
    pub fn from_columns(
        field: &Field,
        n: usize,
        r: usize,
        cols: &[Vec<FieldElem>],
    ) -> Result<HomSubstitution, AnalysisError> {
        if cols.len() + r != n || cols.iter().any(|c| c.len() != r) {
            return Err(AnalysisError::PreconditionViolated(format!(
                "expected {} columns of length {r}",
                n.saturating_sub(r)
            )));
        }
        let l = (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        HomSubstitution::new(field, n, l)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn free(&self) -> usize {
        self.n - self.r
    }

    /// The `r × (n − r)` coefficient matrix.
    pub fn matrix(&self) -> &[Vec<FieldElem>] {
        &self.l
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        self.l.iter().map(|row| row[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.free()).map(|j| self.column(j)).collect()
    }

    /// `ℓ_{i+1}` as a polynomial in the free variables.
    pub fn form(&self, i: usize) -> SparsePoly {
        SparsePoly::linear(&self.field, &self.l[i], &self.field.zero())
    }

    pub fn to_json(&self) -> Value {
        let l: Vec<Vec<Value>> = self.l.iter().map(|row| row.iter().map(FieldElem::to_json).collect()).collect();
        json!({ "field": self.field.to_json(), "n": self.n, "r": self.r, "L": l })
    }

    pub fn from_json(v: &Value) -> Result<HomSubstitution, AnalysisError> {
        let bad = |m: &str| AnalysisError::PreconditionViolated(format!("substitution JSON: {m}"));
        let field = Field::from_json(v.get("field").ok_or_else(|| bad("missing field"))?)?;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("missing r"))? as usize;
        let rows = v.get("L").and_then(Value::as_array).ok_or_else(|| bad("missing L"))?;
        let mut l = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            l.push(row.iter().map(|x| field.elem_from_json(x)).collect::<Result<Vec<_>, _>>()?);
        }
        if l.len() != r {
            return Err(bad("r does not match the number of rows"));
        }
        HomSubstitution::new(&field, n, l)
    }
}

/// Expands `S_n^2(X_1, .., X_{n−r}, ℓ_1, .., ℓ_r)` and tests it for zero.
pub fn substitution_vanishes(s: &HomSubstitution) -> bool {
    let f = &s.field;
    let m = s.free();
    let mut subs: Vec<SparsePoly> = (0..m).map(|j| SparsePoly::variable(f, m, j)).collect();
    subs.extend((0..s.r).map(|i| s.form(i)));
    reference_s2(s.n, f).compose(&subs).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationReport {
    /// Coefficient of `X_j^2` vanishes, per column.
    pub diag_ok: Vec<bool>,
    /// Coefficient of `X_i X_j` vanishes, as `(i, j, ok)` with `i < j`
    /// (0-based).
    pub cross_ok: Vec<(usize, usize, bool)>,
    /// The characteristic-≠2 form of the diagonal equations; `None` in
    /// characteristic 2.
    pub new_diag_ok: Option<Vec<bool>>,
    pub ok: bool,
}

fn sum(f: &Field, y: &[FieldElem]) -> FieldElem {
    y.iter().fold(f.zero(), |acc, x| acc + x)
}

/// `vᵀ (J − I) w = (Σv)(Σw) − v·w`.
pub(crate) fn off_diagonal_form(f: &Field, v: &[FieldElem], w: &[FieldElem]) -> FieldElem {
    let dot = v.iter().zip(w).fold(f.zero(), |acc, (a, b)| acc + a * b);
    sum(f, v) * sum(f, w) - dot
}

/// `yᵀ U y = Σ_{a<b} y_a y_b`.
fn upper_form(f: &Field, y: &[FieldElem]) -> FieldElem {
    let mut acc = f.zero();
    let mut prefix = f.zero();
    for x in y {
        acc = acc + &prefix * x;
        prefix = prefix + x;
    }
    acc
}

pub fn column_equations(s: &HomSubstitution) -> EquationReport {
    let f = &s.field;
    let cols = s.columns();
    let diag_ok: Vec<bool> = cols.iter().map(|y| (sum(f, y) + upper_form(f, y)).is_zero()).collect();
    let mut cross_ok = Vec::new();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let v = f.one() + sum(f, &cols[i]) + sum(f, &cols[j]) + off_diagonal_form(f, &cols[i], &cols[j]);
            cross_ok.push((i, j, v.is_zero()));
        }
    }
    let new_diag_ok = (f.characteristic() != 2).then(|| {
        let two = f.from_i64(2);
        cols.iter().map(|y| (&two * &sum(f, y) + off_diagonal_form(f, y, y)).is_zero()).collect::<Vec<_>>()
    });
    let ok = diag_ok.iter().all(|&b| b)
        && cross_ok.iter().all(|&(_, _, b)| b)
        && new_diag_ok.as_ref().is_none_or(|v| v.iter().all(|&b| b));
    EquationReport { diag_ok, cross_ok, new_diag_ok, ok }
}

/// From a circuit with `r < n` gates computing `S_n^2`, finds linear forms
/// `ℓ_1, .., ℓ_r` in `n − r` variables under which `S_n^2` vanishes.
///
/// Gates are visited in order and, within a gate, forms in order; the first
/// form whose equation `form = 0` is consistent with those already collected
/// joins the system. On the resulting affine space every gate is constant,
/// so the quadratic part of `S_n^2` restricted to it is zero. The smallest
/// `n − r` non-pivot variables stay free, any further free variables are set
/// to zero, and the homogeneous parts of the remaining variables become the
/// `ℓ_i`, after relabelling the free variables to `X_1, .., X_{n−r}`.
pub fn extract_vanishing_substitution(c: &Circuit) -> Result<HomSubstitution, AnalysisError> {
    let (n, r) = (c.n(), c.gate_count());
    if r >= n {
        return Err(AnalysisError::RTooLarge { r, n });
    }
    if !computes_s2(c)?.ok {
        return Err(AnalysisError::NotComputingS2);
    }
    let f = c.field();

    // augmented rows [a | −c] for a·X + c = 0
    let mut system: Vec<Vec<FieldElem>> = Vec::new();
    for gate in c.gates() {
        for form in &gate.forms {
            let mut row = form.coeffs.clone();
            row.push(-&form.constant);
            system.push(row);
            let coeffs: Vec<Vec<FieldElem>> = system.iter().map(|r| r[..n].to_vec()).collect();
            if rank(&coeffs) == rank(&system) {
                break;
            }
            system.pop();
        }
    }

    let pivots = rref(&mut system);
    if pivots.contains(&n) {
        return Err(AnalysisError::InternalInconsistency("collected system is inconsistent".into()));
    }
    let free: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
    if free.len() < n - r {
        return Err(AnalysisError::InternalInconsistency(format!(
            "solution space has dimension {} < {}",
            free.len(),
            n - r
        )));
    }
    let kept = &free[..n - r];
    let bound: Vec<usize> = (0..n).filter(|v| !kept.contains(v)).collect();
    let l: Vec<Vec<FieldElem>> = bound
        .iter()
        .map(|&v| match pivots.iter().position(|&p| p == v) {
            Some(row) => kept.iter().map(|&k| -&system[row][k]).collect(),
            // a surplus free variable, fixed to zero
            None => vec![f.zero(); n - r],
        })
        .collect();
    let s = HomSubstitution::new(f, n, l)?;
    if !substitution_vanishes(&s) {
        return Err(AnalysisError::InternalInconsistency("extracted substitution does not vanish".into()));
    }
    Ok(s)
}
