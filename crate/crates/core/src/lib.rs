//! Exact computations with finite-dimensional semigroup-graded algebras:
//! radicals and splittings, graded codimensions, cocharacter certificates,
//! and the entropy maximization behind fractional exponents.

pub mod algebra;
pub mod arith;
pub mod asympt;
pub mod catalog;
pub mod cochar;
pub mod codim;
pub mod error;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod semigroup;
pub mod structure;
pub mod verify;

pub use algebra::GradedAlgebra;
pub use error::{Error, Result};
pub use semigroup::FiniteSemigroup;
