//! JSON encodings for field descriptors and elements.
//!
//! Elements need their field to decode, so they go through explicit
//! `to_json`/`from_json` functions rather than serde derives.

use num::{BigInt, BigRational, One};
use serde_json::{json, Value};

use super::{Field, FieldDesc, FieldElem, FieldError, Repr};

fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}/1", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"a/b"` or a bare integer `"a"`.
pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::MalformedElement(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn rational_from_value(v: &Value) -> Result<BigRational, FieldError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| FieldError::MalformedElement(v.to_string())),
        _ => Err(FieldError::MalformedElement(v.to_string())),
    }
}

impl FieldDesc {
    pub fn to_json(&self) -> Value {
        match self {
            FieldDesc::Prime { p } => json!({
                "kind": "prime", "p": p, "r": 1, "modulus": [], "adjoined": []
            }),
            FieldDesc::Extension { p, r, modulus } => json!({
                "kind": "extension", "p": p, "r": r, "modulus": modulus, "adjoined": []
            }),
            FieldDesc::Rational => json!({
                "kind": "rational", "p": 0, "r": 1, "modulus": [], "adjoined": []
            }),
            FieldDesc::Tower { adjoined } => json!({
                "kind": "tower", "p": 0, "r": 1, "modulus": [],
                "adjoined": adjoined.iter().map(rational_string).collect::<Vec<_>>()
            }),
        }
    }

    /// Parses a descriptor without validating it; see [`Field::from_json`].
    pub fn from_json(v: &Value) -> Result<FieldDesc, FieldError> {
        let bad = |what: &str| FieldError::MalformedDesc(what.to_string());
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing kind"))?;
        let int = |key: &str| v.get(key).and_then(Value::as_u64);
        match kind {
            "prime" => Ok(FieldDesc::Prime { p: int("p").ok_or_else(|| bad("missing p"))? }),
            "extension" => {
                let p = int("p").ok_or_else(|| bad("missing p"))?;
                let r = int("r").ok_or_else(|| bad("missing r"))?;
                let modulus = v
                    .get("modulus")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing modulus"))?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| bad("modulus coefficient")))
                    .collect::<Result<Vec<_>, _>>()?;
                let r = u32::try_from(r).map_err(|_| bad("r too large"))?;
                Ok(FieldDesc::Extension { p, r, modulus })
            }
            "rational" => Ok(FieldDesc::Rational),
            "tower" => {
                let adjoined = v
                    .get("adjoined")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing adjoined"))?
                    .iter()
                    .map(rational_from_value)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(FieldDesc::Tower { adjoined })
            }
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

impl Field {
    pub fn to_json(&self) -> Value {
        self.desc().to_json()
    }

    /// Parses and validates a descriptor.
    pub fn from_json(v: &Value) -> Result<Field, FieldError> {
        Field::from_desc(FieldDesc::from_json(v)?)
    }

    /// Decodes an element of this field.
    pub fn elem_from_json(&self, v: &Value) -> Result<FieldElem, FieldError> {
        let bad = || FieldError::MalformedElement(v.to_string());
        match self.desc() {
            FieldDesc::Prime { .. } => {
                let x = v.as_i64().ok_or_else(bad)?;
                Ok(self.from_i64(x))
            }
            FieldDesc::Extension { .. } => {
                let coeffs = v
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                self.from_coeffs(&coeffs)
            }
            FieldDesc::Rational => self.from_rational(&rational_from_value(v)?),
            FieldDesc::Tower { .. } => {
                let coeffs =
                    v.as_array().ok_or_else(bad)?.iter().map(rational_from_value).collect::<Result<Vec<_>, _>>()?;
                self.from_repr(Repr::Tower(coeffs))
            }
        }
    }
}

impl FieldElem {
    pub fn to_json(&self) -> Value {
        match self.repr() {
            Repr::Prime(v) => json!(v),
            Repr::Ext(c) => json!(c),
            Repr::Rational(q) => json!(rational_string(q)),
            Repr::Tower(c) => json!(c.iter().map(rational_string).collect::<Vec<_>>()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desc_round_trip() {
        let fields = [
            Field::prime(7).unwrap(),
            Field::gf(9).unwrap(),
            Field::rational(),
            Field::tower(&[parse_rational("-1").unwrap(), parse_rational("2").unwrap()]).unwrap(),
        ];
        for f in fields {
            let back = Field::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn element_encodings() {
        let f = Field::gf(9).unwrap();
        let x = f.from_coeffs(&[1, 2]).unwrap();
        assert_eq!(x.to_json(), json!([1, 2]));
        assert_eq!(f.elem_from_json(&x.to_json()).unwrap(), x);

        let q = Field::rational();
        let half = q.from_rational(&parse_rational("-2/4").unwrap()).unwrap();
        assert_eq!(half.to_json(), json!("-1/2"));

        let t = Field::tower(&[parse_rational("-1").unwrap()]).unwrap();
        let i = t.adjoined_root(0);
        assert_eq!(i.to_json(), json!(["0/1", "1/1"]));
        assert_eq!(t.elem_from_json(&i.to_json()).unwrap(), i);
    }

    #[test]
    fn bad_modulus_rejected() {
        let v = json!({"kind":"extension","p":3,"r":2,"modulus":[1,1,1],"adjoined":[]});
        assert_eq!(Field::from_json(&v).unwrap_err(), FieldError::BadModulus { p: 3, r: 2 });
    }
}
