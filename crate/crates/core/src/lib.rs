//! Symmetric polynomials over tropical, supertropical and symmetrized semirings.
//!
//! The crate provides a dynamic [`Semiring`] abstraction with exact
//! arithmetic, concrete instances, sparse polynomial expressions, constructive
//! decompositions into elementary symmetric polynomials and an executable
//! catalogue of structural theorems.

pub mod checker;
pub mod cli;
pub mod elementarity;
pub mod error;
pub mod instances;
pub mod poly;
pub mod predicates;
pub mod rational;
pub mod report;
pub mod semiring;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly};
pub use report::{PropertyReport, Verdict, Witness};
pub use semiring::{Element, Semiring, SemiringRef, Strategy};
