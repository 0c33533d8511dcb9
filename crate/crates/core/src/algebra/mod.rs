//! Exact arithmetic: rationals, Gaussian rationals and sparse polynomials
//! in the real chart coordinates.

mod gauss;
mod poly;
mod rational;

pub use gauss::GaussRational;
pub use poly::{Monomial, PolyScalar, MAX_VARS};
pub use rational::Rational;
