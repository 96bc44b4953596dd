use super::{MatrixError, SignMatrix};

/// The skew family `F_n` for `n = 2^t`, `t >= 1`.
///
/// `F_2 = [[1, 1], [-1, 1]]` and `F_{2n} = [[F, F^T], [-F, F^T]]`. Every member
/// satisfies `F F^T = n I` and `F + F^T = 2 I`.
pub fn skew_family_power2(n: usize) -> Result<SignMatrix, MatrixError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(MatrixError::NotPowerOfTwo(n));
    }
    let mut f = SignMatrix::from_rows(vec![vec![1, 1], vec![-1, 1]])?;
    while f.order() < n {
        let m = f.order();
        let t = f.transpose();
        f = SignMatrix::from_fn(2 * m, |i, j| match (i < m, j < m) {
            (true, true) => f.get(i, j),
            (true, false) => t.get(i, j - m),
            (false, true) => -f.get(i - m, j),
            (false, false) => t.get(i - m, j - m),
        });
    }
    Ok(f)
}

/// `F - I` for a skew Hadamard `F` of order divisible by 4: a skew
/// conference matrix, which is good.
pub fn good_from_skew(f: &SignMatrix) -> Result<SignMatrix, MatrixError> {
    let n = f.order();
    let is_hadamard = f
        .gram_with(f)
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == if i == j { n as i64 } else { 0 }));
    let skew = (0..n).all(|i| f.get(i, i) == 1 && (0..n).all(|j| i == j || f.get(i, j) == -f.get(j, i)));
    if !(is_hadamard && skew) {
        return Err(MatrixError::NotSkewHadamard);
    }
    if !n.is_multiple_of(4) {
        return Err(MatrixError::OrderNot0Mod4(n));
    }
    Ok(SignMatrix::from_fn(n, |i, j| if i == j { 0 } else { f.get(i, j) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        assert_eq!(skew_family_power2(2).unwrap().rows(), &[vec![1, 1], vec![-1, 1]]);
        assert_eq!(skew_family_power2(6).unwrap_err(), MatrixError::NotPowerOfTwo(6));
        assert_eq!(skew_family_power2(1).unwrap_err(), MatrixError::NotPowerOfTwo(1));
    }

    #[test]
    fn identity_is_not_skew_hadamard() {
        assert_eq!(good_from_skew(&SignMatrix::identity(4)).unwrap_err(), MatrixError::NotSkewHadamard);
        // F_2 is skew Hadamard but its order is 2 mod 4
        let f2 = skew_family_power2(2).unwrap();
        assert_eq!(good_from_skew(&f2).unwrap_err(), MatrixError::OrderNot0Mod4(2));
    }

    #[test]
    fn hadamard_and_skew_up_to_64() {
        for t in 1..=6 {
            let n = 1usize << t;
            let f = skew_family_power2(n).unwrap();
            let g = f.gram_with(&f);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(g[i][j], if i == j { n as i64 } else { 0 });
                    let s = f.get(i, j) + f.get(j, i);
                    assert_eq!(s, if i == j { 2 } else { 0 });
                }
            }
        }
    }
}
