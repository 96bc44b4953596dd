//! Lower-bound machinery: vanishing substitutions, the column-equation
//! framework, GF(2) weight diagnostics, partial-derivative spans,
//! equidistant-point systems, exhaustive search oracles and the table of
//! predicted bounds.
//!
//! Every search enumerates candidates in a fixed lexicographic order, is
//! guarded by an explicit search-space limit, and returns the same witness
//! for any worker count (see [`engine`]).

use thiserror::Error;

use crate::circuits::CircuitError;
use crate::fields::FieldError;

mod bounds;
mod circuit_search;
mod cover_search;
mod derivatives;
pub mod engine;
mod equidistant;
mod gf2;
mod substitution;

pub use bounds::{predicted_bounds, Applicability, Bound, BoundsEntry, FieldFamily, Model};
pub use circuit_search::search_min_circuit_gf2;
pub use cover_search::search_min_cover;
pub use derivatives::partial_derivative_span_dim;
pub use engine::SearchOptions;
pub use equidistant::{search_equidistant_system, EquidistantSolution, Variant};
pub use gf2::{gf2_diagnostics, search_vanishing_gf2, weight_mod4_matches_dot, Dependency, Gf2Diagnostics};
pub use substitution::{
    column_equations, extract_vanishing_substitution, substitution_vanishes, EquationReport, HomSubstitution,
};

/// Environment variable that lifts every default search guard when set to
/// anything other than an empty string or `0`.
pub const GUARD_OVERRIDE_ENV: &str = "BICOVER_GUARD_OVERRIDE";

pub fn guards_overridden() -> bool {
    std::env::var(GUARD_OVERRIDE_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("nothing found within r_max = {r_max}")]
    Exceeded { r_max: usize },
    #[error("r = {r} gates is not below n = {n}")]
    RTooLarge { r: usize, n: usize },
    #[error("the circuit does not compute S_n^2")]
    NotComputingS2,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("checkpoint {0} belongs to a different search")]
    CheckpointMismatch(String),
    #[error("unknown field family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub(crate) fn guard(opts: &SearchOptions, ok: bool, what: impl FnOnce() -> String) -> Result<(), AnalysisError> {
    if ok || opts.lift_guards {
        Ok(())
    } else {
        Err(AnalysisError::SearchSpaceTooLarge(what()))
    }
}
