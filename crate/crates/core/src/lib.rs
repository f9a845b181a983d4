//! Multiple zeta values: indices, exact algebra, certified evaluation and
//! identity verification.

pub mod algebra;
pub mod eval;
pub mod identities;
pub mod index;
pub mod par;
pub mod parse;
pub mod rational;
pub mod verify;

pub use algebra::{AlgebraError, FormalSum};
pub use eval::{EvalError, EvalResult, Evaluator, ValueCache};
pub use index::{Composition, IndexError, Letter, Part, Sign, SignedIndex, Word};
pub use par::Executor;
