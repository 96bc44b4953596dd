//! Dense polynomials over GF(p), little-endian coefficient vectors.
//!
//! Only what GF(p^r) needs: multiplication modulo a monic modulus and an
//! exhaustive irreducibility test by trial division.

use super::prime::{add_mod, inv_mod, mul_mod, sub_mod};

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic-or-not nonzero polynomial `m`.
fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(factor, c, p), p);
        }
        r = trim(r);
    }
    r
}

/// `a * b mod modulus`, result padded to length `deg(modulus)`.
pub(crate) fn mul_reduce(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    let mut out = rem(&prod, modulus, p);
    out.resize(r, 0);
    out
}

/// Decodes `idx` into `len` base-`p` digits, most significant digit first.
pub(crate) fn digits_msd_first(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % p;
        idx /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = digits_msd_first(idx, p, d);
            g.push(1);
            if rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `r` over GF(p), reading
/// the coefficients from `c_{r-1}` down to `c_0` as base-`p` digits (so
/// x^3 + x + 1 comes before x^3 + x^2 + 1). Returned little-endian with the
/// leading 1.
pub(crate) fn smallest_irreducible(p: u64, r: u32) -> Option<Vec<u64>> {
    let count = p.checked_pow(r)?;
    (0..count).find_map(|idx| {
        let mut f = digits_msd_first(idx, p, r as usize);
        f.reverse();
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        assert_eq!(smallest_irreducible(3, 2), Some(vec![1, 0, 1]));
    }

    #[test]
    fn gf4_and_gf8_moduli() {
        // x^2 + x + 1 and x^3 + x + 1
        assert_eq!(smallest_irreducible(2, 2), Some(vec![1, 1, 1]));
        assert_eq!(smallest_irreducible(2, 3), Some(vec![1, 1, 0, 1]));
    }

    #[test]
    fn reducible_quadratics_rejected() {
        // x^2 + x + 1 = (x - 1)^2 over GF(3)
        assert!(!is_irreducible(&[1, 1, 1], 3));
        assert!(is_irreducible(&[2, 1, 1], 3));
        assert!(!is_irreducible(&[0, 0, 1], 5));
    }

    #[test]
    fn reduction_in_gf9() {
        // x * x = x^2 = -1 mod x^2 + 1
        assert_eq!(mul_reduce(&[0, 1], &[0, 1], &[1, 0, 1], 3), vec![2, 0]);
    }
}
