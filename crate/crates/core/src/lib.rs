//! Exact Wedderburn decompositions of semisimple group algebras `FG`.
//!
//! For a finite strongly monomial group `G` and an abelian number field `F`,
//! the crate computes the primitive central idempotents of `FG` from strong
//! Shoda pairs, describes every simple component as a matrix algebra over a
//! cyclotomic crossed product, counts components (also over finite fields),
//! decides when the count is as small as over `Q`, and evaluates the rank of
//! the central units of `RG` for `R` the integers of `F`.
//!
//! All arithmetic is exact: group algebra coefficients live in cyclotomic
//! fields `Q(zeta_L)` with arbitrary-precision rational coordinates.

pub mod algebra;
pub mod arith;
pub mod corpus;
pub mod cyclo;
pub mod group;
pub mod shoda;
pub mod verify;
pub mod wedderburn;

pub use algebra::AlgebraElement;
pub use cyclo::{AbelianField, BaseField, CycloNumber, FiniteField};
pub use group::{CyclicSection, FiniteGroup, GroupSpec, Subgroup, DEFAULT_MAX_ORDER};

use thiserror::Error;

/// Any failure surfaced by the crate's public operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Cyclo(#[from] cyclo::CycloError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Shoda(#[from] shoda::ShodaError),
    #[error(transparent)]
    Wedderburn(#[from] wedderburn::WedderburnError),
}
