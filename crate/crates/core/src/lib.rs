//! Exact rational toolkit for Dirac Lie groups: linear algebra over ℚ, Lie algebra triples,
//! linear groupoids and their modules, homogeneous-space fibers, and finite-group models.

pub mod check;
pub mod cli;
pub mod diracgroup;
pub mod error;
pub mod finitemodel;
pub mod lie;
pub mod linalg;
pub mod lingroupoid;
pub mod sample;

pub use error::{Error, Result};
