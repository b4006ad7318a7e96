//! Cohomological contextuality witnesses for Weyl-operator measurement
//! scenarios over `Z_d`, the contextual fraction, and the classical cost of
//! reproducing the computed functions.
//!
//! Numeric code is generic over [`Scalar`]: exact [`Rational`] or `f32`/`f64`.

pub mod algebra;
pub mod assignments;
pub mod brute;
pub mod classical;
pub mod complex;
pub mod fixtures;
pub mod fraction;
pub mod matrix;
pub mod quantum;
pub mod sampling;
pub mod scalar;
pub mod symmetry;
pub mod weyl;
pub mod witness;

pub use scalar::{Rational, Scalar};

pub type ExactMatrix = matrix::CMatrix<Rational>;
pub type FloatMatrix = matrix::CMatrix<f64>;
pub type ExactState = quantum::DensityState<Rational>;
pub type FloatState = quantum::DensityState<f64>;
pub type ExactModel = quantum::EmpiricalModel<Rational>;
pub type FloatModel = quantum::EmpiricalModel<f64>;
