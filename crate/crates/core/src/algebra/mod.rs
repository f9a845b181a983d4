//! Exact symbolic layer: formal sums, shuffle and stuffle products,
//! zeta-star expansion, the reflection formula and modified Bell
//! polynomials.

mod bell;
mod formal;
mod products;
mod star;

use thiserror::Error;

use crate::index::IndexError;

pub use bell::{bell_harmonic, bell_monomials, bell_p, bell_p_formal, BellMonomial, BellValue};
pub use formal::FormalSum;
pub use products::{shuffle, shuffle_indices, stuffle, WordSum};
pub use star::{reflection_instance, star_expand, ReflectionInstance, StarPlainProduct};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("divergent term {0}")]
    DivergentTerm(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Index(#[from] IndexError),
}
