//! Exact-arithmetic workbench for Hom-associative algebras, their
//! bimodules, and semigroup-indexed twisted Rota-Baxter operator families.
//!
//! Every structure is stored as structure-constant tensors over an exact
//! scalar ring ([`scalar::Q`] or the truncated polynomials
//! [`scalar::Trunc`]). Checkers return [`report::Report`]s; constructions
//! return new structures; the cohomology module computes cochain spaces,
//! differential matrices and cohomology dimensions.

pub mod catalog;
pub mod cohomology;
pub mod deform;
pub mod document;
pub mod elim;
pub mod error;
pub mod family;
pub mod hom;
pub mod matrix;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod semigroup;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Scalar, Trunc, Q};
