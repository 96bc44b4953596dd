use crate::fields::FieldDesc;

use super::{computes_s2, Circuit, CircuitError, Gate, LinearForm};

/// Extends a homogeneous GF(2) circuit for `S_n^2`, `4 | n`, built from
/// two-form gates, to one for `S_{n+1}^2` with the same gates: `X_{n+1}` is
/// added to every form with an odd number of terms.
///
/// Before returning, the integer parity argument behind the construction is
/// rechecked (reading the forms as 0/1 integer forms with `X_{n+1}` weighted
/// by the term count, the coefficient of each `X_j X_{n+1}` must be odd and
/// that of `X_{n+1}^2` even), and the result is expanded and compared with
/// `S_{n+1}^2`.
pub fn gf2_lift(c: &Circuit) -> Result<Circuit, CircuitError> {
    if *c.field().desc() != (FieldDesc::Prime { p: 2 }) {
        return Err(CircuitError::WrongField);
    }
    if !c.is_homogeneous() {
        return Err(CircuitError::NotHomogeneous);
    }
    let n = c.n();
    if !n.is_multiple_of(4) {
        return Err(CircuitError::NNot0Mod4(n));
    }
    if let Some(g) = c.gates().iter().position(|g| g.forms.len() != 2) {
        return Err(CircuitError::NotQuadratic(g));
    }
    if !computes_s2(c)?.ok {
        return Err(CircuitError::InternalInconsistency("input does not compute S_n^2".into()));
    }
    check_parity_claim(c)?;

    let f = c.field();
    let lift = |form: &LinearForm| {
        let mut coeffs = form.coeffs.clone();
        coeffs.push(if form.term_count() % 2 == 1 { f.one() } else { f.zero() });
        LinearForm::homogeneous(f, coeffs)
    };
    let gates = c.gates().iter().map(|g| Gate { forms: g.forms.iter().map(lift).collect() }).collect();
    let out = Circuit::new(f, n + 1, gates)?;
    if !computes_s2(&out)?.ok {
        return Err(CircuitError::InternalInconsistency("lifted circuit does not compute S_{n+1}^2".into()));
    }
    Ok(out)
}

fn check_parity_claim(c: &Circuit) -> Result<(), CircuitError> {
    let n = c.n();
    let bits = |form: &LinearForm| -> Vec<i64> { form.coeffs.iter().map(|x| i64::from(!x.is_zero())).collect() };
    let mut cross = vec![0i64; n];
    let mut square = 0i64;
    for g in c.gates() {
        let (l, r) = (bits(&g.forms[0]), bits(&g.forms[1]));
        let (a, b) = (l.iter().sum::<i64>(), r.iter().sum::<i64>());
        for j in 0..n {
            cross[j] += l[j] * b + a * r[j];
        }
        square += a * b;
    }
    if let Some(j) = cross.iter().position(|v| v % 2 == 0) {
        return Err(CircuitError::InternalInconsistency(format!("coefficient of X{} X{} is even", j + 1, n + 1)));
    }
    if square % 2 != 0 {
        return Err(CircuitError::InternalInconsistency(format!("coefficient of X{}^2 is odd", n + 1)));
    }
    Ok(())
}
