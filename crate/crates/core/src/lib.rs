//! Exact symbolic calculus of graded derivations on almost complex charts.
//!
//! The crate is layered bottom-up:
//!
//! - [`algebra`]: Gaussian-rational polynomials, the coefficient ring.
//! - [`chart`]: a coordinate chart with a polynomial almost complex structure.
//! - [`forms`]: scalar, tangent-valued and bundle-valued forms and their brackets.
//! - [`operators`]: graded derivations as composable operators, exponentials
//!   of nilpotent contractions, and a small matrix-algebra playground.
//! - [`verifier`]: named identity checks with exact zero residuals.
//! - [`cli`]: configuration and JSON reporting used by the `derivkit` binary.

pub mod algebra;
pub mod chart;
pub mod cli;
mod error;
pub mod forms;
pub mod operators;
pub mod verifier;

pub use error::{Error, Result};
