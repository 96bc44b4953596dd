//! Multi-quadratic towers `Q(sqrt d_1, .., sqrt d_t)`.
//!
//! An element is a vector of `2^t` rationals over the product basis: bit `i`
//! of a basis index marks the factor `sqrt d_{i+1}`. Splitting a vector at
//! its midpoint writes it as `a + b sqrt d_t` with `a, b` in the tower one
//! level down, and every operation here recurses on that split.

use num::{BigInt, BigRational, One, Signed, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn zero_vec(len: usize) -> Vec<Q> {
    vec![Q::zero(); len]
}

fn add(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn scale(x: &[Q], c: &Q) -> Vec<Q> {
    x.iter().map(|a| a * c).collect()
}

fn is_zero(x: &[Q]) -> bool {
    x.iter().all(Zero::is_zero)
}

fn join(mut lo: Vec<Q>, hi: Vec<Q>) -> Vec<Q> {
    lo.extend(hi);
    lo
}

pub(crate) fn mul(x: &[Q], y: &[Q], ds: &[Q]) -> Vec<Q> {
    let Some((d, lower)) = ds.split_last() else {
        return vec![&x[0] * &y[0]];
    };
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, e) = y.split_at(h);
    let ac = mul(a, c, lower);
    let be = mul(b, e, lower);
    let ae = mul(a, e, lower);
    let bc = mul(b, c, lower);
    join(add(&ac, &scale(&be, d)), add(&ae, &bc))
}

/// Multiplicative inverse; `None` for zero.
pub(crate) fn inv(x: &[Q], ds: &[Q]) -> Option<Vec<Q>> {
    let Some((d, lower)) = ds.split_last() else {
        return (!x[0].is_zero()).then(|| vec![x[0].recip()]);
    };
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    // (a + b s)^-1 = (a - b s) / (a^2 - d b^2)
    let norm = sub(&mul(a, a, lower), &scale(&mul(b, b, lower), d));
    let norm_inv = inv(&norm, lower)?;
    let neg_b: Vec<Q> = b.iter().map(|c| -c).collect();
    Some(join(mul(a, &norm_inv, lower), mul(&neg_b, &norm_inv, lower)))
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let rn: BigInt = n.sqrt();
    let rd: BigInt = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Some square root of `x` in the tower, if one exists.
pub(crate) fn sqrt(x: &[Q], ds: &[Q]) -> Option<Vec<Q>> {
    let Some((d, lower)) = ds.split_last() else {
        return rational_sqrt(&x[0]).map(|r| vec![r]);
    };
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    if is_zero(b) {
        if let Some(u) = sqrt(a, lower) {
            return Some(join(u, zero_vec(h)));
        }
        // (v s)^2 = d v^2
        let a_over_d = scale(a, &d.recip());
        return sqrt(&a_over_d, lower).map(|v| join(zero_vec(h), v));
    }
    // (u + v s)^2 = a + b s  =>  u^2 - d v^2 = +-sqrt(a^2 - d b^2), 2uv = b
    let norm = sub(&mul(a, a, lower), &scale(&mul(b, b, lower), d));
    let s = sqrt(&norm, lower)?;
    let half = Q::new(BigInt::one(), BigInt::from(2));
    for sign in [Q::one(), -Q::one()] {
        let u_sq = scale(&add(a, &scale(&s, &sign)), &half);
        if let Some(u) = sqrt(&u_sq, lower) {
            if is_zero(&u) {
                continue;
            }
            let two_u_inv = inv(&scale(&u, &Q::from_integer(2.into())), lower)?;
            let v = mul(b, &two_u_inv, lower);
            return Some(join(u, v));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn gaussian_norm() {
        let ds = [q(-1)];
        assert_eq!(mul(&v(&[1, 1]), &v(&[1, -1]), &ds), v(&[2, 0]));
    }

    #[test]
    fn inverse_two_levels() {
        let ds = [q(-1), q(2)];
        let x = v(&[1, 2, -3, 5]);
        let y = inv(&x, &ds).unwrap();
        assert_eq!(mul(&x, &y, &ds), v(&[1, 0, 0, 0]));
    }

    #[test]
    fn sqrt_of_non_basis_element() {
        // (1 + sqrt2)^2 = 3 + 2 sqrt2 in Q(i, sqrt2)
        let ds = [q(-1), q(2)];
        let x = v(&[3, 0, 2, 0]);
        let r = sqrt(&x, &ds).unwrap();
        assert_eq!(mul(&r, &r, &ds), x);
        // 2i = (1 + i)^2
        let x = v(&[0, 2, 0, 0]);
        let r = sqrt(&x, &ds).unwrap();
        assert_eq!(mul(&r, &r, &ds), x);
    }

    #[test]
    fn nonsquares_detected() {
        let ds = [q(-1)];
        assert!(sqrt(&v(&[3, 0]), &ds).is_none());
        assert!(sqrt(&v(&[2, 0]), &ds).is_none());
        assert!(sqrt(&v(&[-4, 0]), &ds).is_some());
    }
}
