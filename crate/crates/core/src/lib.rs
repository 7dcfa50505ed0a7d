//! Canonical commutation relations over finite rings.
//!
//! Builds CCR pairs `(U, V)` on `R^d`, checks the character conditions,
//! constructs the explicit unitaries relating a pair to the Schrödinger pair,
//! and computes the error bounds of the approximate construction for `ℤ^d`.

pub mod approx;
pub mod character;
pub mod error;
pub mod fourier;
pub mod group;
pub mod heisenberg;
pub mod linalg;
pub mod pairs;
pub mod phase;
pub mod ring;
pub mod svn;

pub use error::{Error, Result};
