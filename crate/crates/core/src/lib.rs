//! Exact Gauss and Jacobi sum arithmetic over finite fields, with
//! verification suites for the classical identities these sums satisfy
//! and for the lattice structure of their prime factorizations.
//!
//! Everything is exact: cyclotomic numbers carry rational coefficients,
//! point counts are integers, and every check compares canonical values.
//! There is no floating point anywhere in this crate.

pub mod arith;
pub mod chars;
pub mod config;
pub mod cyclo;
pub mod engine;
pub mod error;
pub mod ff;
pub mod relations;
pub mod report;
pub mod sums;

pub use error::{Error, Result};
