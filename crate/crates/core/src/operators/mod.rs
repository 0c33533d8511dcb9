//! Graded derivations on bundle-valued forms and a small matrix algebra for
//! testing conjugation formulas in isolation.

mod connection;
mod decompose;
mod derivation;
mod equality;
mod exponential;
pub mod matrix;

pub use connection::{Connection, ConnectionSplit, LieFlavor};
pub use decompose::{decompose_derivation, refined_decompose, refined_decompose_all, RefinedDecomposition};
pub use derivation::DerivationOp;
pub use equality::{Generator, GeneratorFamily, Mismatch};
pub use exponential::{conjugate_operator, exp_interior};
pub use matrix::{
    algebra_iterated_bracket, commutable_degree, conjugated_exponential, conjugation_closed_form, AlgebraElement,
};
