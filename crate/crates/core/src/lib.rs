//! Depth-3 circuits for the second elementary symmetric polynomial
//! `S_n^2 = Σ_{i<j} X_i X_j`, and the biclique covers of `K_n` they
//! correspond to.
//!
//! * [`fields`]: exact GF(p), GF(p^r) and quadratic towers over ℚ.
//! * [`matrices`]: sign matrices, good matrices, skew and design families.
//! * [`covers`]: bipartite-graph covers of `K_n` and their verification.
//! * [`circuits`]: ΣΠΣ circuits, the expansion oracle, explicit constructions.
//! * [`analysis`]: vanishing substitutions, lower-bound checks, exhaustive
//!   searches and the bounds table.
//!
//! The guide in `book/` walks through each of these; its snippets run as
//! doc-tests of this crate.

pub mod analysis;
pub mod circuits;
pub mod covers;
pub mod fields;
pub mod linalg;
pub mod matrices;

// Book chapters and the README, compiled as doc-tests so they cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/lower_bounds.md")]
    mod lower_bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
