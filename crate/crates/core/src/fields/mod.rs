//! Exact arithmetic over the fields used by the constructions: prime fields
//! GF(p), extensions GF(p^r), the rationals, and multi-quadratic towers of
//! the rationals (which stand in for the complex numbers).
//!
//! A [`Field`] is a cheap shared handle; every [`FieldElem`] carries the
//! handle of the field it belongs to. Mixing elements of different fields in
//! the `std::ops` operators panics; the `try_*` methods report
//! [`FieldError::FieldMismatch`] instead.
//!
//! ```
//! use bicover::fields::Field;
//! use num::BigRational;
//!
//! let gf7 = Field::prime(7).unwrap();
//! assert_eq!(gf7.from_i64(3) * gf7.from_i64(5), gf7.one());
//!
//! let qi = Field::tower(&[BigRational::from_integer((-1).into())]).unwrap();
//! let i = qi.adjoined_root(0);
//! let one = qi.one();
//! assert_eq!((&one + &i) * (&one - &i), qi.from_i64(2));
//! ```

mod extension;
mod json;
mod prime;
mod tower;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

pub use json::parse_rational;
pub use prime::prime_power;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{r}) is too large to represent")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("no monic irreducible polynomial of degree {r} over GF({p})")]
    NoIrreducibleFound { p: u64, r: u32 },
    #[error("supplied modulus is not a monic irreducible polynomial of degree {r} over GF({p})")]
    BadModulus { p: u64, r: u32 },
    #[error("tower discriminants must be nonzero")]
    ZeroDiscriminant,
    #[error("discriminant {0} already has a square root in the tower")]
    DiscriminantIsSquare(BigRational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("the quadratic character is undefined in characteristic 2")]
    CharTwoUnsupported,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("malformed field description: {0}")]
    MalformedDesc(String),
}

/// Validated description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Prime {
        p: u64,
    },
    /// `modulus` is monic of degree `r`, little-endian, leading 1 included.
    Extension {
        p: u64,
        r: u32,
        modulus: Vec<u64>,
    },
    Rational,
    /// `adjoined[i]` has no square root in the tower built from `adjoined[..i]`.
    Tower {
        adjoined: Vec<BigRational>,
    },
}

/// Shared handle to a validated field.
#[derive(Clone)]
pub struct Field(Arc<FieldDesc>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldDesc::Prime { p } => write!(f, "GF({p})"),
            FieldDesc::Extension { p, r, .. } => write!(f, "GF({p}^{r})"),
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Tower { adjoined } => {
                write!(f, "Q(")?;
                for (i, d) in adjoined.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "sqrt({d})")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Internal representation of an element; always canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Repr {
    Prime(u64),
    Ext(Vec<u64>),
    Rational(BigRational),
    Tower(Vec<BigRational>),
}

#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    repr: Repr,
}

impl Field {
    fn wrap(desc: FieldDesc) -> Field {
        Field(Arc::new(desc))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !prime::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::wrap(FieldDesc::Prime { p }))
    }

    /// GF(p^r). Without a modulus the lexicographically smallest monic
    /// irreducible polynomial is used. `r = 1` gives the prime field.
    pub fn extension(p: u64, r: u32, modulus: Option<Vec<u64>>) -> Result<Field, FieldError> {
        if !prime::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if p.checked_pow(r).is_none_or(|q| q > u64::MAX / 4) {
            return Err(FieldError::FieldTooLarge { p, r });
        }
        if r == 1 && modulus.is_none() {
            return Ok(Field::wrap(FieldDesc::Prime { p }));
        }
        let modulus = match modulus {
            Some(m) => {
                let ok = m.len() == r as usize + 1
                    && m.last() == Some(&1)
                    && m.iter().all(|&c| c < p)
                    && extension::is_irreducible(&m, p);
                if !ok {
                    return Err(FieldError::BadModulus { p, r });
                }
                m
            }
            None => extension::smallest_irreducible(p, r).ok_or(FieldError::NoIrreducibleFound { p, r })?,
        };
        Ok(Field::wrap(FieldDesc::Extension { p, r, modulus }))
    }

    /// GF(q) for a prime power `q`.
    pub fn gf(q: u64) -> Result<Field, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Field::extension(p, r, None)
    }

    pub fn rational() -> Field {
        Field::wrap(FieldDesc::Rational)
    }

    /// `Q(sqrt d_1, .., sqrt d_t)`, adjoining the discriminants in order.
    pub fn tower(adjoined: &[BigRational]) -> Result<Field, FieldError> {
        let mut field = Field::wrap(FieldDesc::Tower { adjoined: Vec::new() });
        for d in adjoined {
            field = field.adjoin(d.clone())?;
        }
        Ok(field)
    }

    /// Builds a field from an unvalidated description.
    pub fn from_desc(desc: FieldDesc) -> Result<Field, FieldError> {
        match desc {
            FieldDesc::Prime { p } => Field::prime(p),
            FieldDesc::Extension { p, r, modulus } => {
                let f = Field::extension(p, r, Some(modulus))?;
                Ok(f)
            }
            FieldDesc::Rational => Ok(Field::rational()),
            FieldDesc::Tower { adjoined } => Field::tower(&adjoined),
        }
    }

    /// Tower extension by `sqrt d`. Rejects `d` that already has a root.
    /// The rationals are promoted to a tower first.
    pub fn adjoin(&self, d: BigRational) -> Result<Field, FieldError> {
        let adjoined = match &*self.0 {
            FieldDesc::Rational => Vec::new(),
            FieldDesc::Tower { adjoined } => adjoined.clone(),
            _ => return Err(FieldError::FieldMismatch),
        };
        if d.is_zero() {
            return Err(FieldError::ZeroDiscriminant);
        }
        let mut probe = tower::zero_vec(1 << adjoined.len());
        probe[0] = d.clone();
        if tower::sqrt(&probe, &adjoined).is_some() {
            return Err(FieldError::DiscriminantIsSquare(d));
        }
        let mut next = adjoined;
        next.push(d);
        Ok(Field::wrap(FieldDesc::Tower { adjoined: next }))
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }

    /// 0 for the rationals and towers.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldDesc::Prime { p } | FieldDesc::Extension { p, .. } => *p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<u64> {
        match &*self.0 {
            FieldDesc::Prime { p } => Some(*p),
            FieldDesc::Extension { p, r, .. } => Some(p.pow(*r)),
            _ => None,
        }
    }

    /// Dimension of the representation vector.
    fn width(&self) -> usize {
        match &*self.0 {
            FieldDesc::Prime { .. } | FieldDesc::Rational => 1,
            FieldDesc::Extension { r, .. } => *r as usize,
            FieldDesc::Tower { adjoined } => 1 << adjoined.len(),
        }
    }

    fn elem(&self, repr: Repr) -> FieldElem {
        FieldElem { field: self.clone(), repr }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    /// Image of an integer.
    pub fn from_i64(&self, v: i64) -> FieldElem {
        match &*self.0 {
            FieldDesc::Prime { p } => self.elem(Repr::Prime(prime::reduce_i64(v, *p))),
            FieldDesc::Extension { p, r, .. } => {
                let mut c = vec![0; *r as usize];
                c[0] = prime::reduce_i64(v, *p);
                self.elem(Repr::Ext(c))
            }
            FieldDesc::Rational => self.elem(Repr::Rational(BigRational::from_integer(v.into()))),
            FieldDesc::Tower { .. } => {
                let mut c = tower::zero_vec(self.width());
                c[0] = BigRational::from_integer(v.into());
                self.elem(Repr::Tower(c))
            }
        }
    }

    /// Image of a rational number; fails in characteristic `p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, FieldError> {
        match &*self.0 {
            FieldDesc::Rational => Ok(self.elem(Repr::Rational(q.clone()))),
            FieldDesc::Tower { .. } => {
                let mut c = tower::zero_vec(self.width());
                c[0] = q.clone();
                Ok(self.elem(Repr::Tower(c)))
            }
            _ => {
                let p = BigInt::from(self.characteristic());
                let reduce = |x: &BigInt| -> i64 {
                    let m = ((x % &p) + &p) % &p;
                    i64::try_from(m).expect("residue fits in i64")
                };
                let num = self.from_i64(reduce(q.numer()));
                let den = self.from_i64(reduce(q.denom()));
                num.try_div(&den)
            }
        }
    }

    /// Builds an element from a validated representation.
    pub fn from_repr(&self, repr: Repr) -> Result<FieldElem, FieldError> {
        let ok = match (&*self.0, &repr) {
            (FieldDesc::Prime { p }, Repr::Prime(v)) => v < p,
            (FieldDesc::Extension { p, r, .. }, Repr::Ext(c)) => c.len() == *r as usize && c.iter().all(|x| x < p),
            (FieldDesc::Rational, Repr::Rational(_)) => true,
            (FieldDesc::Tower { .. }, Repr::Tower(c)) => c.len() == self.width(),
            _ => false,
        };
        if ok {
            Ok(self.elem(repr))
        } else {
            Err(FieldError::MalformedElement(format!("{repr:?} for {self}")))
        }
    }

    /// Extension element from little-endian coefficients in the generator.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem, FieldError> {
        match &*self.0 {
            FieldDesc::Extension { p, r, .. } => {
                let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
                if c.len() > *r as usize {
                    return Err(FieldError::MalformedElement(format!("{coeffs:?}")));
                }
                c.resize(*r as usize, 0);
                Ok(self.elem(Repr::Ext(c)))
            }
            FieldDesc::Prime { p } if coeffs.len() <= 1 => {
                Ok(self.elem(Repr::Prime(coeffs.first().copied().unwrap_or(0) % p)))
            }
            _ => Err(FieldError::MalformedElement(format!("{coeffs:?}"))),
        }
    }

    /// `sqrt d_{index+1}` as a basis element of a tower.
    ///
    /// Panics when the field is not a tower or `index` is out of range.
    pub fn adjoined_root(&self, index: usize) -> FieldElem {
        let FieldDesc::Tower { adjoined } = &*self.0 else {
            panic!("{self} is not a tower");
        };
        assert!(index < adjoined.len(), "no discriminant #{index} in {self}");
        let mut c = tower::zero_vec(self.width());
        c[1 << index] = BigRational::one();
        self.elem(Repr::Tower(c))
    }

    /// Re-expresses an element of a sub-tower (or of the rationals) in this
    /// tower. Identity for elements already in this field.
    pub fn embed(&self, x: &FieldElem) -> Result<FieldElem, FieldError> {
        if x.field == *self {
            return Ok(x.clone());
        }
        let FieldDesc::Tower { adjoined } = &*self.0 else {
            return Err(FieldError::FieldMismatch);
        };
        let (sub, coeffs): (&[BigRational], Vec<BigRational>) = match (&*x.field.0, &x.repr) {
            (FieldDesc::Rational, Repr::Rational(q)) => (&[], vec![q.clone()]),
            (FieldDesc::Tower { adjoined: a }, Repr::Tower(c)) => (a, c.clone()),
            _ => return Err(FieldError::FieldMismatch),
        };
        if !adjoined.starts_with(sub) {
            return Err(FieldError::FieldMismatch);
        }
        let mut c = coeffs;
        c.resize(self.width(), BigRational::zero());
        Ok(self.elem(Repr::Tower(c)))
    }

    /// All elements in canonical order (finite fields only).
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem> + '_, FieldError> {
        let q = self.order().ok_or(FieldError::InfiniteField)?;
        Ok((0..q).map(move |idx| self.element_at(idx)))
    }

    /// Element number `idx` in canonical order. Panics if `idx >= order`.
    pub fn element_at(&self, idx: u64) -> FieldElem {
        match &*self.0 {
            FieldDesc::Prime { p } => {
                assert!(idx < *p);
                self.elem(Repr::Prime(idx))
            }
            FieldDesc::Extension { p, r, .. } => {
                assert!(idx < p.pow(*r));
                self.elem(Repr::Ext(extension::digits_msd_first(idx, *p, *r as usize)))
            }
            _ => panic!("{self} is infinite"),
        }
    }

    /// Inverse of [`Field::element_at`].
    pub fn index_of(&self, x: &FieldElem) -> Option<u64> {
        match &x.repr {
            Repr::Prime(v) => Some(*v),
            Repr::Ext(c) => {
                let p = self.characteristic();
                Some(c.iter().fold(0u64, |acc, &d| acc * p + d))
            }
            _ => None,
        }
    }

    /// The quadratic character: 0 on zero, +1 on nonzero squares, -1
    /// otherwise. Computed as `x^((q-1)/2)`.
    pub fn quadratic_character(&self, x: &FieldElem) -> Result<i8, FieldError> {
        if x.field != *self {
            return Err(FieldError::FieldMismatch);
        }
        let q = self.order().ok_or(FieldError::InfiniteField)?;
        if self.characteristic() == 2 {
            return Err(FieldError::CharTwoUnsupported);
        }
        if x.is_zero() {
            return Ok(0);
        }
        let e = x.pow((q - 1) / 2);
        if e.is_one() {
            Ok(1)
        } else {
            debug_assert_eq!(e, -self.one());
            Ok(-1)
        }
    }

    /// A square root of `x`, or `None` when `x` is not a square.
    ///
    /// Of the two roots the one with the smaller canonical representation
    /// is returned (see [`FieldElem::cmp`]). Finite fields are scanned
    /// exhaustively in canonical order.
    pub fn sqrt(&self, x: &FieldElem) -> Result<Option<FieldElem>, FieldError> {
        if x.field != *self {
            return Err(FieldError::FieldMismatch);
        }
        if self.is_finite() {
            return Ok(self.elements()?.find(|y| &(y * y) == x));
        }
        let root = match (&*self.0, &x.repr) {
            (FieldDesc::Rational, Repr::Rational(q)) => {
                tower::sqrt(std::slice::from_ref(q), &[]).map(|mut v| Repr::Rational(v.remove(0)))
            }
            (FieldDesc::Tower { adjoined }, Repr::Tower(c)) => tower::sqrt(c, adjoined).map(Repr::Tower),
            _ => unreachable!("element repr matches its field"),
        };
        Ok(root.map(|r| {
            let y = self.elem(r);
            let neg = -&y;
            if neg < y {
                neg
            } else {
                y
            }
        }))
    }
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(c) => c.iter().all(|&x| x == 0),
            Repr::Rational(q) => q.is_zero(),
            Repr::Tower(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The element as a rational, when it lies in the prime subfield of a
    /// characteristic-zero field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q.clone()),
            Repr::Tower(c) if c[1..].iter().all(Zero::is_zero) => Some(c[0].clone()),
            _ => None,
        }
    }

    fn check(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn zip_repr(&self, other: &FieldElem, op: Op) -> Repr {
        let desc = &*self.field.0;
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic();
                Repr::Prime(match op {
                    Op::Add => prime::add_mod(*a, *b, p),
                    Op::Sub => prime::sub_mod(*a, *b, p),
                    Op::Mul => prime::mul_mod(*a, *b, p),
                })
            }
            (Repr::Ext(a), Repr::Ext(b)) => {
                let FieldDesc::Extension { p, modulus, .. } = desc else { unreachable!() };
                Repr::Ext(match op {
                    Op::Add => a.iter().zip(b).map(|(x, y)| prime::add_mod(*x, *y, *p)).collect(),
                    Op::Sub => a.iter().zip(b).map(|(x, y)| prime::sub_mod(*x, *y, *p)).collect(),
                    Op::Mul => extension::mul_reduce(a, b, modulus, *p),
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Repr::Tower(a), Repr::Tower(b)) => {
                let FieldDesc::Tower { adjoined } = desc else { unreachable!() };
                Repr::Tower(match op {
                    Op::Add => a.iter().zip(b).map(|(x, y)| x + y).collect(),
                    Op::Sub => a.iter().zip(b).map(|(x, y)| x - y).collect(),
                    Op::Mul => tower::mul(a, b, adjoined),
                })
            }
            _ => unreachable!("fields already checked equal"),
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        Ok(self.field.elem(self.zip_repr(other, Op::Add)))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        Ok(self.field.elem(self.zip_repr(other, Op::Sub)))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        Ok(self.field.elem(self.zip_repr(other, Op::Mul)))
    }

    pub fn try_div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.field.elem(self.zip_repr(&inv, Op::Mul)))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let repr = match (&*self.field.0, &self.repr) {
            (FieldDesc::Prime { p }, Repr::Prime(a)) => Repr::Prime(prime::inv_mod(*a, *p)),
            (FieldDesc::Extension { .. }, Repr::Ext(_)) => {
                let q = self.field.order().expect("finite");
                return Ok(self.pow(q - 2));
            }
            (FieldDesc::Rational, Repr::Rational(a)) => Repr::Rational(a.recip()),
            (FieldDesc::Tower { adjoined }, Repr::Tower(c)) => {
                Repr::Tower(tower::inv(c, adjoined).expect("nonzero tower element is invertible"))
            }
            _ => unreachable!(),
        };
        Ok(self.field.elem(repr))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Applies a single arithmetic operation.
    pub fn apply(&self, op: ArithOp<'_>) -> Result<FieldElem, FieldError> {
        match op {
            ArithOp::Add(b) => self.try_add(b),
            ArithOp::Sub(b) => self.try_sub(b),
            ArithOp::Mul(b) => self.try_mul(b),
            ArithOp::Div(b) => self.try_div(b),
            ArithOp::Neg => Ok(-self),
            ArithOp::Inv => self.inv(),
            ArithOp::Pow(e) => Ok(self.pow(e)),
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

/// Operation selector for [`FieldElem::apply`].
#[derive(Clone, Copy, Debug)]
pub enum ArithOp<'a> {
    Add(&'a FieldElem),
    Sub(&'a FieldElem),
    Mul(&'a FieldElem),
    Div(&'a FieldElem),
    Neg,
    Inv,
    Pow(u64),
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

/// Sign-magnitude key: zero, then positives by size, then negatives by size.
fn rational_key_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    (a.is_negative(), a.abs()).cmp(&(b.is_negative(), b.abs()))
}

impl Ord for FieldElem {
    /// Canonical order: integer value for GF(p), lexicographic on the
    /// coefficient vector (constant term first) for GF(p^r) and towers, with
    /// rationals compared by sign then magnitude, so that `1 < -1`.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => a.cmp(b),
            (Repr::Rational(a), Repr::Rational(b)) => rational_key_cmp(a, b),
            (Repr::Tower(a), Repr::Tower(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| rational_key_cmp(x, y))
                .find(|o| o.is_ne())
                .unwrap_or_else(|| a.len().cmp(&b.len())),
            (a, b) => discriminant(a).cmp(&discriminant(b)),
        }
    }
}

fn discriminant(r: &Repr) -> u8 {
    match r {
        Repr::Prime(_) => 0,
        Repr::Ext(_) => 1,
        Repr::Rational(_) => 2,
        Repr::Tower(_) => 3,
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$try(rhs).expect("operands from different fields")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let repr = match &self.repr {
            Repr::Prime(a) => Repr::Prime(prime::neg_mod(*a, self.field.characteristic())),
            Repr::Ext(c) => {
                let p = self.field.characteristic();
                Repr::Ext(c.iter().map(|&x| prime::neg_mod(x, p)).collect())
            }
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Tower(c) => Repr::Tower(c.iter().map(|x| -x).collect()),
        };
        self.field.elem(repr)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(v) => write!(f, "{v}"),
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Ext(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, x)| match i {
                        0 => format!("{x}"),
                        1 => format!("{x}x"),
                        _ => format!("{x}x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
            Repr::Tower(c) => {
                let FieldDesc::Tower { adjoined } = &*self.field.0 else { unreachable!() };
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(idx, x)| {
                        let mut s = format!("{x}");
                        for (bit, d) in adjoined.iter().enumerate() {
                            if idx >> bit & 1 == 1 {
                                s.push_str(&format!("*sqrt({d})"));
                            }
                        }
                        s
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join(" + "))
                }
            }
        }
    }
}
