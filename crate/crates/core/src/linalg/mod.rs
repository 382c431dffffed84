//! Exact linear algebra over the rationals.

pub mod form;
pub mod matrix;
pub mod quotient;
pub mod reduction;
pub mod scalar;
pub mod subspace;

pub use form::{Classification, Signature, SymmetricForm};
pub use matrix::{LinearMap, Matrix};
pub use quotient::QuotientSpace;
pub use reduction::{coisotropic_reduce, isotropic_reduce, reduction_in_stages, reduction_in_stages_check, ReductionInStages, StagesComparison};
pub use scalar::{frac, int, parse_scalar, Scalar, Vector};
pub use subspace::Subspace;
