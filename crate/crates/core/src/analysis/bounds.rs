//! Known lower and upper bounds on the number of multiplication gates in a
//! depth-3 circuit for `S_n^2`, by field family.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::fields::{prime_power, FieldDesc};

use super::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFamily {
    Gf2,
    /// `GF(p^r)` with `p` odd.
    GfOdd {
        p: u64,
        r: u32,
    },
    /// The rationals; the reals share every bound.
    RationalOrReal,
    Complex,
}

impl FieldFamily {
    pub fn from_desc(d: &FieldDesc) -> Result<FieldFamily, AnalysisError> {
        match d {
            FieldDesc::Prime { p: 2 } => Ok(FieldFamily::Gf2),
            FieldDesc::Prime { p } => Ok(FieldFamily::GfOdd { p: *p, r: 1 }),
            FieldDesc::Extension { p, r, .. } if *p != 2 => Ok(FieldFamily::GfOdd { p: *p, r: *r }),
            FieldDesc::Rational => Ok(FieldFamily::RationalOrReal),
            other => Err(AnalysisError::UnknownFamily(other.to_json().to_string())),
        }
    }
}

impl FromStr for FieldFamily {
    type Err = AnalysisError;

    /// `gf2`, `gf<q>` for an odd prime power `q`, `q`/`rational`,
    /// `r`/`real`, `c`/`complex` (case-insensitive).
    fn from_str(s: &str) -> Result<FieldFamily, AnalysisError> {
        let unknown = || AnalysisError::UnknownFamily(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "gf2" | "gf(2)" => Ok(FieldFamily::Gf2),
            "q" | "rational" | "rationals" | "r" | "real" | "reals" => Ok(FieldFamily::RationalOrReal),
            "c" | "complex" => Ok(FieldFamily::Complex),
            _ => {
                let digits = lower
                    .strip_prefix("gf(")
                    .and_then(|t| t.strip_suffix(')'))
                    .or_else(|| lower.strip_prefix("gf"))
                    .ok_or_else(unknown)?;
                let q: u64 = digits.parse().map_err(|_| unknown())?;
                match prime_power(q) {
                    Some((p, r)) if p != 2 => Ok(FieldFamily::GfOdd { p, r }),
                    _ => Err(unknown()),
                }
            }
        }
    }
}

impl fmt::Display for FieldFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldFamily::Gf2 => write!(f, "GF(2)"),
            FieldFamily::GfOdd { p, r: 1 } => write!(f, "GF({p})"),
            FieldFamily::GfOdd { p, r } => write!(f, "GF({p}^{r})"),
            FieldFamily::RationalOrReal => write!(f, "Q/R"),
            FieldFamily::Complex => write!(f, "C"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Inhomogeneous,
    Homogeneous,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Applicability {
    AllN,
    /// Achieved for infinitely many `n` of this residue class, not all.
    ExistenceOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub model: Model,
    pub applicability: Applicability,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsEntry {
    pub family: String,
    pub n: usize,
    pub lower: Bound,
    /// Every known upper bound; the star decomposition's `n − 1` is always
    /// present.
    pub upper: Vec<Bound>,
}

impl BoundsEntry {
    /// The least upper bound, preferring one that holds for all `n`.
    pub fn best_upper(&self) -> &Bound {
        self.upper
            .iter()
            .min_by_key(|b| (b.value, b.applicability != Applicability::AllN))
            .expect("the star bound is always present")
    }

    /// The least upper bound valid for every `n`.
    pub fn best_upper_all_n(&self) -> &Bound {
        self.upper
            .iter()
            .filter(|b| b.applicability == Applicability::AllN)
            .min_by_key(|b| b.value)
            .expect("the star bound holds for all n")
    }
}

fn bound(value: usize, model: Model, applicability: Applicability, citation: &str) -> Bound {
    Bound { value, model, applicability, citation: citation.to_string() }
}

pub fn predicted_bounds(family: FieldFamily, n: usize) -> BoundsEntry {
    use Applicability::*;
    use Model::*;
    let (floor, ceil) = (n / 2, n.div_ceil(2));
    let star = bound(n.saturating_sub(1), Graph, AllN, "star decomposition of K_n");
    let mut upper = Vec::new();
    let lower = match family {
        FieldFamily::Gf2 => {
            let (value, why) = match n % 4 {
                0 | 2 => (floor, "GF(2) substitution argument: independent columns"),
                3 => (ceil, "GF(2) substitution argument with the mod-4 weight identity, n ≡ 3 mod 4"),
                _ => (floor, "GF(2) substitution argument, n ≡ 1 mod 4"),
            };
            upper.push(bound(ceil, Graph, ExistenceOnly, "odd covers from good matrices (pairs construction)"));
            if n % 4 == 1 {
                upper.push(bound(
                    floor,
                    Homogeneous,
                    ExistenceOnly,
                    "homogeneous lift of a circuit for S_{n-1}^2, n ≡ 1 mod 4",
                ));
            }
            bound(value, Inhomogeneous, AllN, why)
        }
        FieldFamily::GfOdd { p, r } => {
            let m = n as u64 % p;
            let lower = if n.is_multiple_of(2) {
                bound(floor, Inhomogeneous, AllN, "equidistant points at distance √2 (even n)")
            } else if m == 1 || m == 3 % p || m == p - 1 {
                bound(floor, Inhomogeneous, AllN, "partial-derivative span (odd n, k ∈ {0, ±1} in F)")
            } else {
                bound(ceil, Inhomogeneous, AllN, "equidistant points on a sphere (odd n, k ∉ {0, ±1} in F)")
            };
            if r % 2 == 0 {
                // −1, 2 and every 2k − 1 are squares in GF(p^r), r even
                upper.push(bound(ceil, Homogeneous, AllN, "explicit construction: all square roots exist for r even"));
            } else if p % 4 == 1 {
                if n % 2 == 1 {
                    upper.push(bound(ceil, Homogeneous, AllN, "explicit odd construction using √−1"));
                } else {
                    upper.push(bound(
                        floor,
                        Homogeneous,
                        ExistenceOnly,
                        "explicit even construction when 2 and 2k − 1 are squares",
                    ));
                    upper.push(bound(
                        floor + 1,
                        Homogeneous,
                        AllN,
                        "odd construction for S_{n+1}^2, one variable set to 0",
                    ));
                }
            } else {
                upper.push(bound(ceil, Graph, ExistenceOnly, "1 mod p covers from symmetric designs"));
            }
            lower
        }
        FieldFamily::RationalOrReal => {
            upper.push(star.clone());
            bound(n.saturating_sub(1), Inhomogeneous, AllN, "rank of the quadratic form over an ordered field")
        }
        FieldFamily::Complex => {
            upper.push(bound(ceil, Homogeneous, AllN, "explicit constructions using √−1, √2, √(2k−1)"));
            bound(ceil, Inhomogeneous, AllN, "equidistant points on a sphere")
        }
    };
    if family != FieldFamily::RationalOrReal {
        upper.push(star);
    }
    let mut entry = BoundsEntry { family: family.to_string(), n, lower, upper };
    if n <= 1 {
        // S_0^2 = S_1^2 = 0 needs no gates
        entry.lower.value = 0;
        entry.upper.iter_mut().for_each(|b| b.value = 0);
    }
    entry
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = predicted_bounds(FieldFamily::Gf2, 7);
        assert_eq!(e.lower.value, 4);
        assert_eq!(e.lower.model, Model::Inhomogeneous);
        let best = e.best_upper();
        assert_eq!((best.value, best.applicability), (4, Applicability::ExistenceOnly));

        let e = predicted_bounds(FieldFamily::RationalOrReal, 10);
        assert_eq!((e.lower.value, e.best_upper().value), (9, 9));
        let e = predicted_bounds(FieldFamily::Complex, 6);
        assert_eq!((e.lower.value, e.best_upper().value), (3, 3));
    }

    #[test]
    fn parsing() {
        assert_eq!("gf2".parse::<FieldFamily>().unwrap(), FieldFamily::Gf2);
        assert_eq!("GF(9)".parse::<FieldFamily>().unwrap(), FieldFamily::GfOdd { p: 3, r: 2 });
        assert_eq!("gf13".parse::<FieldFamily>().unwrap(), FieldFamily::GfOdd { p: 13, r: 1 });
        assert_eq!("real".parse::<FieldFamily>().unwrap(), FieldFamily::RationalOrReal);
        for bad in ["gf4", "gf6", "h", "gf"] {
            assert!(matches!(bad.parse::<FieldFamily>(), Err(AnalysisError::UnknownFamily(_))), "{bad}");
        }
    }

    #[test]
    fn lower_never_exceeds_all_n_upper() {
        let families = [
            FieldFamily::Gf2,
            FieldFamily::GfOdd { p: 3, r: 1 },
            FieldFamily::GfOdd { p: 3, r: 2 },
            FieldFamily::GfOdd { p: 5, r: 1 },
            FieldFamily::GfOdd { p: 7, r: 1 },
            FieldFamily::GfOdd { p: 13, r: 3 },
            FieldFamily::RationalOrReal,
            FieldFamily::Complex,
        ];
        for fam in families {
            for n in 0..60 {
                let e = predicted_bounds(fam, n);
                assert!(e.lower.value <= e.best_upper_all_n().value, "{fam} n={n}");
                assert!(e.upper.iter().any(|b| b.value == n.saturating_sub(1) && b.model == Model::Graph));
            }
        }
    }
}
