//! Evolution algebras of a "chicken" population (EACP).
//!
//! An EACP over a field `K` has a natural basis `h1..hn, r` with
//! `hi·hj = 0`, `r·r = 0` and `hi·r = r·hi = Σ a_ij hj + b_i r`. The
//! algebra is fixed by the `n × (n+1)` matrix `M = A ⊕ b`.
//!
//! Everything here is exact (rationals and quadratic extensions) unless an
//! algebra is explicitly built over the float backend.

pub mod algebra;
pub mod basis;
pub mod catalog;
pub mod classify;
pub mod eigen;
pub mod error;
pub mod expr;
pub mod format;
pub mod matrix;
pub mod periodicity;
pub mod poly;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod simplicity;
pub mod substructure;
pub mod verify;

pub use algebra::{Algebra, Element, Generator, StructuralMatrix};
pub use error::{EacpError, Result};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
