use std::collections::BTreeSet;

use crate::circuits::{Monomial, SparsePoly};
use crate::linalg::rank;

/// Dimension of the span of `∂p/∂X_1, .., ∂p/∂X_n`.
///
/// For `S_m^2` the derivatives are the rows of `J − I`, so the answer is
/// `m` unless `m ≡ 1` in the field, where it drops to `m − 1`.
pub fn partial_derivative_span_dim(p: &SparsePoly) -> usize {
    let derivs: Vec<SparsePoly> = (0..p.n()).map(|i| p.partial_derivative(i)).collect();
    let support: BTreeSet<&Monomial> = derivs.iter().flat_map(|d| d.terms().keys()).collect();
    let rows: Vec<Vec<_>> = derivs.iter().map(|d| support.iter().map(|m| d.coeff(m)).collect()).collect();
    if support.is_empty() {
        return 0;
    }
    rank(&rows)
}
