//! Generalized cyclotomic binary sequences of order `d` over `Z_pq` and
//! their linear complexity.
//!
//! The linear complexity is computed three ways: a polynomial gcd over
//! GF(2), Berlekamp-Massey, and for `d = 8` an S-matrix of Gauss-period
//! sums evaluated in GF(2^m). A closed form keyed on power-residue classes
//! predicts the same number.

#![allow(clippy::manual_is_multiple_of)]

pub mod closed_form;
pub mod cyclotomy;
pub mod error;
pub mod field;
pub mod gf2poly;
pub mod residue;
pub mod sequence;
pub mod smatrix;

pub use closed_form::{classify, lc_closed_form, PairClassification};
pub use cyclotomy::{ClassLabel, CyclotomyContext};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use gf2poly::{berlekamp_massey, linear_complexity_gcd, minimal_polynomial, BitPolynomial};
pub use residue::ResidueClass;
pub use sequence::{generate, BitSequence};
