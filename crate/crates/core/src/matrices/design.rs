//! The projective plane PG(2, q) and the character matrix `M[L][Q] = η(L·Q)`.

use crate::fields::{prime_power, Field, FieldElem};

use super::{MatrixError, SignMatrix};

/// Points and lines of PG(2, q).
///
/// Both are lists of vectors in `GF(q)^3` whose first nonzero coordinate is
/// 1, in lexicographic order of the coordinates' element indices. A line is
/// given by its normal vector, so the two lists coincide; they are kept
/// separate because they play different roles.
#[derive(Clone, Debug)]
pub struct PlaneDesc {
    pub q: u64,
    pub field: Field,
    pub points: Vec<[FieldElem; 3]>,
    pub lines: Vec<[FieldElem; 3]>,
}

impl PlaneDesc {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// `L · Q` for line `l` and point `p`.
    pub fn pairing(&self, l: usize, p: usize) -> FieldElem {
        let (a, b) = (&self.lines[l], &self.points[p]);
        &(&a[0] * &b[0]) + &(&a[1] * &b[1]) + &a[2] * &b[2]
    }

    pub fn incident(&self, l: usize, p: usize) -> bool {
        self.pairing(l, p).is_zero()
    }
}

fn odd_prime_power_field(q: u64) -> Result<Field, MatrixError> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => Field::gf(q).map_err(|_| MatrixError::NotOddPrimePower(q)),
        _ => Err(MatrixError::NotOddPrimePower(q)),
    }
}

pub fn projective_plane(q: u64) -> Result<PlaneDesc, MatrixError> {
    let field = odd_prime_power_field(q)?;
    let elems: Vec<FieldElem> = field.elements().expect("finite").collect();
    let mut reps = Vec::with_capacity((q * q + q + 1) as usize);
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let first = [a, b, c].into_iter().find(|x| !x.is_zero());
                if first.is_some_and(FieldElem::is_one) {
                    reps.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    Ok(PlaneDesc { q, field, points: reps.clone(), lines: reps })
}

/// Which cover property the design matrix is meant to deliver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Congruence {
    /// A good matrix; needs q ≡ 3 mod 4.
    OddCover,
    /// A good-for-p matrix; needs q ≡ −1 mod 2p.
    ModP(u64),
}

/// `M[L][Q] = η(L·Q)` over PG(2, q), rows indexed by lines and columns by
/// points. Every row has `q^2` nonzeros, two rows share `q^2 − q` nonzero
/// columns, and distinct rows are orthogonal.
pub fn symmetric_design_matrix(q: u64, congruence: Congruence) -> Result<SignMatrix, MatrixError> {
    odd_prime_power_field(q)?;
    match congruence {
        Congruence::OddCover if q % 4 != 3 => {
            return Err(MatrixError::CongruenceViolated { q, need: "q ≡ 3 mod 4".into() });
        }
        Congruence::ModP(p) if p % 2 == 0 => return Err(MatrixError::PEven(p)),
        Congruence::ModP(p) if p < 3 => return Err(MatrixError::PTooSmall(p)),
        Congruence::ModP(p) if !(q + 1).is_multiple_of(2 * p) => {
            return Err(MatrixError::CongruenceViolated { q, need: format!("q ≡ -1 mod {}", 2 * p) });
        }
        _ => {}
    }
    let plane = projective_plane(q)?;
    let f = &plane.field;
    Ok(SignMatrix::from_fn(plane.size(), |l, p| {
        f.quadratic_character(&plane.pairing(l, p)).expect("odd characteristic")
    }))
}
