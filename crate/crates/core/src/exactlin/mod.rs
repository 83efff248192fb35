//! Exact linear algebra over the rationals and over prime fields.
//!
//! Every rank, kernel and echelon form used elsewhere in the crate goes
//! through this module.

mod matrix;
pub mod modp;
mod rational;

pub use matrix::{primitive_integer, rank_of_rows, QMatrix, Rref};
pub use modp::DEFAULT_PRIME;
pub use rational::{ParseRationalError, Rational};
