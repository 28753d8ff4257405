//! Exact integer and residue-class linear algebra.
//!
//! Integers are fixed-width `i64` with mandatory overflow detection: every
//! arithmetic step that can grow an entry goes through a checked operation
//! and reports [`Error::ArithmeticOverflow`] instead of wrapping. Smith normal
//! form is the exception: its transforms are [`BigMatrix`] values, because
//! they leave the 64-bit range on ordinary 6×6 inputs.

mod basis;
mod error;
mod matrix;
pub mod num;
mod residue;
mod snf;

pub use basis::{complete_primitive_to_basis, random_unimodular};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use residue::{gcd_with_modulus, Divisor24, Modulus, Residue};
pub use snf::{smith_normal_form, BigMatrix, Snf};
