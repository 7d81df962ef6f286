//! Exact cyclotomic arithmetic and the abelian number field model.

mod field;
mod number;
pub mod poly;

pub use field::{AbelianField, BaseField, FiniteField, GaloisImage, GaloisImages};
pub(crate) use number::Accumulator;
pub use number::CycloNumber;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed level {from} into level {to}")]
    IncompatibleLevels { from: usize, to: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
}
