//! ΣΠΣ circuits: sums of products of linear forms.
//!
//! ```
//! use bicover::circuits::{computes_s2, odd_construction};
//! use bicover::fields::Field;
//!
//! let gf5 = Field::prime(5).unwrap();
//! let c = odd_construction(2, &gf5).unwrap();
//! assert_eq!(c.gate_count(), 3);
//! assert!(computes_s2(&c).unwrap().ok);
//! ```

mod constructions;
mod lift;
mod poly;

use serde_json::{json, Value};
use thiserror::Error;

use crate::covers::Cover;
use crate::fields::{Field, FieldElem, FieldError};

pub use constructions::{even_construction, odd_construction};
pub use lift::gf2_lift;
pub use poly::{reference_s2, reference_t2, Monomial, SparsePoly};

/// Default bound on monomial multiplications per gate during expansion.
pub const DEFAULT_EXPANSION_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("linear form has {got} coefficients, circuit has {want} variables")]
    ArityMismatch { want: usize, got: usize },
    #[error("gate {gate} needs {ops} monomial operations, above the cap of {cap}")]
    ExpansionTooLarge { gate: usize, ops: u64, cap: u64 },
    #[error("the field has no square root of -1")]
    NoSquareRootOfMinusOne,
    #[error("characteristic 2 is not supported by this construction")]
    CharTwo,
    #[error("the field has no square root of {0}")]
    MissingSquareRoot(i64),
    #[error("k = {0} vanishes in the field")]
    KZeroInField(u64),
    #[error("circuit is not homogeneous")]
    NotHomogeneous,
    #[error("circuit must be over GF(2)")]
    WrongField,
    #[error("n = {0} is not divisible by 4")]
    NNot0Mod4(usize),
    #[error("gate {0} is not a product of exactly two forms")]
    NotQuadratic(usize),
    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),
    #[error("malformed circuit: {0}")]
    Malformed(String),
}

/// `Σ coeffs[i] X_{i+1} + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<FieldElem>,
    pub constant: FieldElem,
}

impl LinearForm {
    pub fn zero(field: &Field, n: usize) -> LinearForm {
        LinearForm { coeffs: vec![field.zero(); n], constant: field.zero() }
    }

    pub fn homogeneous(field: &Field, coeffs: Vec<FieldElem>) -> LinearForm {
        LinearForm { coeffs, constant: field.zero() }
    }

    /// `Σ_{i in vars} X_i` with 1-based variable indices.
    pub fn sum_of(field: &Field, n: usize, vars: &[usize]) -> LinearForm {
        let mut f = LinearForm::zero(field, n);
        for &v in vars {
            f.coeffs[v - 1] = &f.coeffs[v - 1] + &field.one();
        }
        f
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    /// Number of nonzero coefficients, constant excluded.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &FieldElem) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|x| x * c).collect(), constant: &self.constant * c }
    }

    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::linear(self.constant.field(), &self.coeffs, &self.constant)
    }

    fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(FieldElem::to_json).collect::<Vec<_>>(),
            "const": self.constant.to_json(),
        })
    }
}

/// One multiplication gate: the product of its forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub forms: Vec<LinearForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    field: Field,
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(field: &Field, n: usize, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        for form in gates.iter().flat_map(|g| &g.forms) {
            if form.n() != n {
                return Err(CircuitError::ArityMismatch { want: n, got: form.n() });
            }
            let elems = form.coeffs.iter().chain(std::iter::once(&form.constant));
            if elems.into_iter().any(|c| c.field() != field) {
                return Err(FieldError::FieldMismatch.into());
            }
        }
        Ok(Circuit { field: field.clone(), n, gates })
    }

    pub fn empty(field: &Field, n: usize) -> Circuit {
        Circuit { field: field.clone(), n, gates: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of multiplication gates.
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gates.iter().flat_map(|g| &g.forms).all(LinearForm::is_homogeneous)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "n": self.n,
            "gates": self.gates.iter().map(|g| json!({
                "forms": g.forms.iter().map(LinearForm::to_json).collect::<Vec<_>>()
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Circuit, CircuitError> {
        let bad = |s: &str| CircuitError::Malformed(s.to_string());
        let field = Field::from_json(v.get("field").ok_or_else(|| bad("missing field"))?)?;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let mut gates = Vec::new();
        for g in v.get("gates").and_then(Value::as_array).ok_or_else(|| bad("missing gates"))? {
            let mut forms = Vec::new();
            for f in g.get("forms").and_then(Value::as_array).ok_or_else(|| bad("missing forms"))? {
                let coeffs = f
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing coeffs"))?
                    .iter()
                    .map(|c| field.elem_from_json(c))
                    .collect::<Result<Vec<_>, _>>()?;
                let constant = match f.get("const") {
                    Some(c) => field.elem_from_json(c)?,
                    None => field.zero(),
                };
                forms.push(LinearForm { coeffs, constant });
            }
            gates.push(Gate { forms });
        }
        Circuit::new(&field, n, gates)
    }
}

/// Expands with the default per-gate cap.
pub fn expand(c: &Circuit) -> Result<SparsePoly, CircuitError> {
    expand_with_cap(c, DEFAULT_EXPANSION_CAP)
}

/// Distributes every gate. The cost of a gate is the product of its forms'
/// term counts; gates above `cap` are refused.
pub fn expand_with_cap(c: &Circuit, cap: u64) -> Result<SparsePoly, CircuitError> {
    let mut total = SparsePoly::zero(&c.field, c.n);
    for (gi, g) in c.gates.iter().enumerate() {
        let mut ops: u64 = 1;
        for f in &g.forms {
            let t = (f.term_count() + usize::from(!f.is_homogeneous())) as u64;
            ops = ops.saturating_mul(t.max(1));
        }
        if ops > cap {
            return Err(CircuitError::ExpansionTooLarge { gate: gi, ops, cap });
        }
        let mut prod = SparsePoly::constant(&c.field, c.n, c.field.one());
        for f in &g.forms {
            prod = prod.mul(&f.to_poly());
        }
        total = total.add(&prod);
    }
    Ok(total)
}

/// Outcome of comparing a circuit against `S_n^2`.
#[derive(Clone, Debug)]
pub struct S2Check {
    pub ok: bool,
    /// `expand(c) − S_n^2`.
    pub difference: SparsePoly,
}

pub fn computes_s2(c: &Circuit) -> Result<S2Check, CircuitError> {
    let diff = expand(c)?.sub(&reference_s2(c.n, &c.field));
    Ok(S2Check { ok: diff.is_zero(), difference: diff })
}

/// One gate `(Σ_{j∈A} X_j)(Σ_{j∈B} X_j)` per bipartite graph.
pub fn circuit_from_cover(cover: &Cover, field: &Field) -> Circuit {
    let n = cover.n();
    let gates = cover
        .graphs()
        .iter()
        .map(|g| Gate { forms: vec![LinearForm::sum_of(field, n, g.a()), LinearForm::sum_of(field, n, g.b())] })
        .collect();
    Circuit::new(field, n, gates).expect("cover vertices lie in 1..=n")
}

/// Number of multiplication gates.
pub fn gate_count(c: &Circuit) -> usize {
    c.gate_count()
}
