//! Matrices used as carrier operators.
//!
//! Most constructed operators are monomial (one unit-modulus entry per row)
//! with exact rational phases; they stay in [`PhaseMonomial`] form so that
//! products and residuals are exact. Conjugated pairs fall back to dense
//! [`ComplexMatrix`] values.

mod dense;
mod monomial;
mod operator;

pub use dense::{random_unitary, ComplexMatrix, DENSE_SVD_LIMIT};
pub use monomial::PhaseMonomial;
pub use operator::Operator;

pub use num_complex::Complex64 as C64;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
