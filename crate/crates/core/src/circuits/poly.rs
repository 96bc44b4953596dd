use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::fields::{Field, FieldElem};

/// Exponent vector of a monomial, one entry per variable.
pub type Monomial = Vec<u16>;

/// A polynomial in `n` variables over a field, stored as a map from
/// exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    n: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl SparsePoly {
    pub fn zero(field: &Field, n: usize) -> SparsePoly {
        SparsePoly { field: field.clone(), n, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, n: usize, c: FieldElem) -> SparsePoly {
        let mut p = SparsePoly::zero(field, n);
        p.add_term(vec![0; n], c);
        p
    }

    /// `c · X^exps`.
    pub fn monomial(field: &Field, exps: Monomial, c: FieldElem) -> SparsePoly {
        let mut p = SparsePoly::zero(field, exps.len());
        p.add_term(exps, c);
        p
    }

    /// `X_{i+1}` (0-based index).
    pub fn variable(field: &Field, n: usize, i: usize) -> SparsePoly {
        let mut e = vec![0; n];
        e[i] = 1;
        SparsePoly::monomial(field, e, field.one())
    }

    /// Degree-one polynomial `Σ coeffs[i] X_{i+1} + constant`.
    pub fn linear(field: &Field, coeffs: &[FieldElem], constant: &FieldElem) -> SparsePoly {
        let n = coeffs.len();
        let mut p = SparsePoly::constant(field, n, constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElem> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> FieldElem {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    /// Adds `c · X^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Monomial, c: FieldElem) {
        assert_eq!(exps.len(), self.n, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check(&self, other: &SparsePoly) {
        assert!(self.field == other.field, "polynomials over different fields");
        assert_eq!(self.n, other.n, "polynomials in different numbers of variables");
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElem) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, self.n);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check(other);
        let mut out = SparsePoly::zero(&self.field, self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂/∂X_{i+1}`.
    pub fn partial_derivative(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field, self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * &self.field.from_i64(e[i] as i64));
        }
        out
    }

    /// Composition `p(g_1, .., g_n)`; all `g_i` share a field and arity.
    pub fn compose(&self, subs: &[SparsePoly]) -> SparsePoly {
        assert_eq!(subs.len(), self.n, "one substitute per variable");
        let m = subs.first().map_or(0, |g| g.n);
        let mut out = SparsePoly::zero(&self.field, m);
        for (e, c) in &self.terms {
            let mut term = SparsePoly::constant(&self.field, m, c.clone());
            for (g, &k) in subs.iter().zip(e) {
                for _ in 0..k {
                    term = term.mul(g);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.n);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * x.pow(k as u64);
            }
            acc = acc + t;
        }
        acc
    }

    /// Terms as `[[exponents], coefficient]`, in the display order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().rev().map(|(e, c)| json!([e, c.to_json()])).collect();
        json!({ "n": self.n, "field": self.field.to_json(), "terms": terms })
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in descending lexicographic order of exponents, so `X1^2` comes
    /// before `X1*X2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("X{}", i + 1) } else { format!("X{}^{k}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `S_n^2 = Σ_{i<j} X_i X_j`.
pub fn reference_s2(n: usize, field: &Field) -> SparsePoly {
    let mut p = SparsePoly::zero(field, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0; n];
            e[i] = 1;
            e[j] = 1;
            p.add_term(e, field.one());
        }
    }
    p
}

/// `T_n^2 = Σ_i X_i^2`.
pub fn reference_t2(n: usize, field: &Field) -> SparsePoly {
    let mut p = SparsePoly::zero(field, n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 2;
        p.add_term(e, field.one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_polynomials() {
        let q = Field::rational();
        assert_eq!(reference_s2(3, &q).to_string(), "X1*X2 + X1*X3 + X2*X3");
        assert!(reference_s2(1, &q).is_zero());
        let f2 = Field::prime(2).unwrap();
        assert_eq!(reference_t2(2, &f2).to_string(), "X1^2 + X2^2");
    }

    #[test]
    fn difference_of_squares() {
        let q = Field::rational();
        let x1 = SparsePoly::variable(&q, 2, 0);
        let x2 = SparsePoly::variable(&q, 2, 1);
        let p = x1.add(&x2).mul(&x1.sub(&x2));
        assert_eq!(p.to_string(), "X1^2 + (-1)*X2^2");
    }

    #[test]
    fn derivative_and_eval() {
        let f = Field::prime(7).unwrap();
        let s = reference_s2(3, &f);
        let d = s.partial_derivative(0);
        assert_eq!(d.to_string(), "X2 + X3");
        let pt: Vec<FieldElem> = [1, 2, 3].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(s.eval(&pt), f.from_i64(11));
    }

    #[test]
    fn composition() {
        let q = Field::rational();
        // S_3(X1, X2, X1) = X1^2 + 2 X1 X2
        let x1 = SparsePoly::variable(&q, 2, 0);
        let x2 = SparsePoly::variable(&q, 2, 1);
        let p = reference_s2(3, &q).compose(&[x1.clone(), x2, x1]);
        assert_eq!(p.to_string(), "X1^2 + (2)*X1*X2");
    }
}
