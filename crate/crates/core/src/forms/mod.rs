//! Complexified scalar, tangent-valued and bundle-valued forms.
//!
//! Components are always stored against the real coordinate coframe with
//! complex coefficients. Bidegrees are derived through the chart's projectors,
//! since a non-integrable chart has no closed `(p, q)` coframe.

pub mod bidegree;
mod bundle;
pub mod mask;
pub mod random;
mod scalar;
mod vector;

pub use bidegree::{all_components, split_scalar, split_vector, Bidegree, ValueSide};
pub use bundle::BundleForm;
pub use mask::Mask;
pub use scalar::ScalarForm;
pub use vector::VectorForm;

pub(crate) use vector::parity_sign;
