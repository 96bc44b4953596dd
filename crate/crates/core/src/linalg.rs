//! Gaussian elimination over exact fields, plus word-packed GF(2) and
//! machine-word GF(p) variants for the search inner loops.

use crate::fields::FieldElem;

/// Reduces `rows` to reduced row echelon form in place, choosing pivots
/// left to right, and returns the pivot columns. All rows must have the
/// same length and field.
pub fn rref(rows: &mut [Vec<FieldElem>]) -> Vec<usize> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(found) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = rows[top][col].inv().expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == top || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in col..width {
                let sub = &factor * &rows[top][c];
                rows[i][c] = &rows[i][c] - &sub;
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Rank of a matrix over GF(p) with entries already reduced mod `p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut top = 0;
    for col in 0..width {
        let Some(found) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = inv_mod(rows[top][col], p);
        for x in rows[top].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for i in top + 1..rows.len() {
            let f = rows[i][col];
            if f == 0 {
                continue;
            }
            for c in col..width {
                let sub = (f as u128 * rows[top][c] as u128 % p as u128) as u64;
                rows[i][c] = (rows[i][c] + p - sub) % p;
            }
        }
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    top
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank over GF(2) of vectors packed into words.
pub fn gf2_rank(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A basis of `{c : Σ c_j v_j = 0}` over GF(2); bit `j` of each returned
/// word selects `vectors[j]`. At most 64 vectors.
pub fn gf2_kernel(vectors: &[u64]) -> Vec<u64> {
    assert!(vectors.len() <= 64);
    // (reduced value, combination) pairs kept with distinct leading bits
    let mut basis: Vec<(u64, u64)> = Vec::new();
    let mut kernel = Vec::new();
    for (j, &v) in vectors.iter().enumerate() {
        let (mut x, mut comb) = (v, 1u64 << j);
        for &(b, bc) in &basis {
            if x ^ b < x {
                x ^= b;
                comb ^= bc;
            }
        }
        if x == 0 {
            kernel.push(comb);
        } else {
            basis.push((x, comb));
            basis.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        }
    }
    kernel
}
