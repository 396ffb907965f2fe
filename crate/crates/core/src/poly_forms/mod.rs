//! Exact exterior calculus on ℝⁿ with polynomial coefficients.

mod form;
mod multi_index;
mod polynomial;
mod vector_field;

pub(crate) use form::determinant;
pub use form::PolyForm;
pub use multi_index::MultiIndex;
pub use polynomial::{Exponents, Polynomial, Substitution};
pub use vector_field::PolyVectorField;
