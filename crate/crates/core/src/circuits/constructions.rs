//! Explicit circuits for `S_n^2` in characteristic other than 2.

use num::BigRational;

use crate::fields::{Field, FieldDesc, FieldElem};

use super::{Circuit, CircuitError, Gate, LinearForm};

fn sqrt_minus_one(field: &Field) -> Result<FieldElem, CircuitError> {
    if field.characteristic() == 2 {
        return Err(CircuitError::CharTwo);
    }
    field.sqrt(&field.from_i64(-1))?.ok_or(CircuitError::NoSquareRootOfMinusOne)
}

/// `k + 1` gates for `S_{2k+1}^2`, given a square root `i` of −1:
///
/// ```text
/// ½(Σ_{j≥2} X_j)(2X_1 + Σ_{j≥2} X_j) − ½ Σ_{j=1..k} (X_{2j} + iX_{2j+1})(X_{2j} − iX_{2j+1})
/// ```
///
/// The scalars are folded into the first form of each gate. For `k = 0` the
/// single gate has an identically zero first form.
pub fn odd_construction(k: usize, field: &Field) -> Result<Circuit, CircuitError> {
    let i = sqrt_minus_one(field)?;
    let n = 2 * k + 1;
    let half = field.from_i64(2).inv()?;
    let rest: Vec<usize> = (2..=n).collect();

    let mut gates = Vec::with_capacity(k + 1);
    let first = LinearForm::sum_of(field, n, &rest).scale(&half);
    let mut second = LinearForm::sum_of(field, n, &rest);
    second.coeffs[0] = field.from_i64(2);
    gates.push(Gate { forms: vec![first, second] });

    let minus_half = -&half;
    for j in 1..=k {
        let (u, v) = (2 * j - 1, 2 * j);
        let mut a = LinearForm::zero(field, n);
        a.coeffs[u] = minus_half.clone();
        a.coeffs[v] = &minus_half * &i;
        let mut b = LinearForm::zero(field, n);
        b.coeffs[u] = field.one();
        b.coeffs[v] = -&i;
        gates.push(Gate { forms: vec![a, b] });
    }
    Circuit::new(field, n, gates)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Square roots of −1, 2 and `2k − 1`, adjoining any that are missing when
/// the field is the rationals or a tower over them.
fn roots_for_even(k: usize, field: &Field) -> Result<(Field, [FieldElem; 3]), CircuitError> {
    let d = 2 * k as i64 - 1;
    let mut f = field.clone();
    if matches!(field.desc(), FieldDesc::Rational | FieldDesc::Tower { .. }) {
        for disc in [-1, 2, d] {
            if f.sqrt(&f.from_i64(disc))?.is_none() {
                f = f.adjoin(rat(disc))?;
            }
        }
    }
    let root = |x: i64| -> Result<FieldElem, CircuitError> {
        f.sqrt(&f.from_i64(x))?.ok_or(CircuitError::MissingSquareRoot(x))
    };
    let i = root(-1)?;
    let s = root(d)?;
    let r2 = root(2)?;
    Ok((f.clone(), [i, r2, s]))
}

/// `k` gates for `S_{2k}^2`.
///
/// With `i = √−1`, shift the points `i·e_j` of `F^{2k}` by `w = (i + √(2k−1))/(2k)`
/// (a root of `2k w² − 2iw − 1 = 0`) so that `z_j = i·e_j − w·1` satisfy
/// `z_j·z_j = 0` and `z_j·z_l = 1`. Gate `m` is `a_m(X)·b_m(X)` with
/// `(a_mj, b_mj) = (z_j[2m−1] + i z_j[2m], z_j[2m−1] − i z_j[2m]) / √2`.
///
/// Over the rationals or a tower, missing square roots are adjoined in the
/// order −1, 2, 2k−1; the returned circuit lives in the enlarged field.
/// Finite fields are checked for −1, then 2k−1, then 2.
pub fn even_construction(k: usize, field: &Field) -> Result<Circuit, CircuitError> {
    if field.characteristic() == 2 {
        return Err(CircuitError::CharTwo);
    }
    if k == 0 {
        return Ok(Circuit::empty(field, 0));
    }
    if field.from_i64(2 * k as i64).is_zero() {
        return Err(CircuitError::KZeroInField(k as u64));
    }
    let (f, [i, r2, s]) = roots_for_even(k, field)?;
    let two_k = f.from_i64(2 * k as i64);
    let n = 2 * k;
    let w = (&i + &s).try_div(&two_k)?;
    let z: Vec<Vec<FieldElem>> = (0..n).map(|j| (0..n).map(|t| if t == j { &i - &w } else { -&w }).collect()).collect();
    let inv_r2 = r2.inv()?;
    // y[j] = (a_1j, b_1j, .., a_kj, b_kj)
    let y: Vec<Vec<FieldElem>> = z
        .iter()
        .map(|zj| {
            (0..k)
                .flat_map(|m| {
                    let (p, q) = (&zj[2 * m], &zj[2 * m + 1]);
                    let iq = &i * q;
                    [(p + &iq) * &inv_r2, (p - &iq) * &inv_r2]
                })
                .collect()
        })
        .collect();
    check_gram(&f, &y)?;
    let gates = (0..k)
        .map(|m| {
            let a = (0..n).map(|j| y[j][2 * m].clone()).collect();
            let b = (0..n).map(|j| y[j][2 * m + 1].clone()).collect();
            Gate { forms: vec![LinearForm::homogeneous(&f, a), LinearForm::homogeneous(&f, b)] }
        })
        .collect();
    Circuit::new(&f, n, gates)
}

/// `y_j^T A y_l` with `A` block-diagonal of `[[0, 1], [1, 0]]` must be 0 on
/// the diagonal and 1 off it.
fn check_gram(f: &Field, y: &[Vec<FieldElem>]) -> Result<(), CircuitError> {
    for (j, yj) in y.iter().enumerate() {
        for (l, yl) in y.iter().enumerate() {
            let mut g = f.zero();
            for m in (0..yj.len()).step_by(2) {
                g = g + &yj[m] * &yl[m + 1] + &yj[m + 1] * &yl[m];
            }
            let want = if j == l { f.zero() } else { f.one() };
            if g != want {
                return Err(CircuitError::InternalInconsistency(format!(
                    "Gram entry ({j}, {l}) is {g}, expected {want}"
                )));
            }
        }
    }
    Ok(())
}
