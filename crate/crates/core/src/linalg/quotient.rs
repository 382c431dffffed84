use super::matrix::Matrix;
use super::scalar::{Scalar, Vector};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// `ambient / kernel` with a fixed complement.
///
/// The complement is chosen greedily from the canonical basis of `ambient`, so
/// representatives are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient: Subspace,
    kernel: Subspace,
    projection: Matrix,
    section: Matrix,
}

impl QuotientSpace {
    pub fn new(ambient: Subspace, kernel: Subspace) -> Result<Self> {
        if !ambient.contains_subspace(&kernel) {
            return Err(Error::DimMismatch("quotient kernel not contained in ambient".into()));
        }
        let n = ambient.ambient_dim();
        let comp = ambient.complement_of(&kernel);
        let q = comp.len();
        let k = kernel.dim();
        // Extend [kernel; complement] to a basis of Q^n; its inverse transpose gives coordinates.
        let partial = Subspace::span(n, &kernel.basis_vectors().into_iter().chain(comp.iter().cloned()).collect::<Vec<_>>());
        let extra = Subspace::full(n).complement_of(&partial);
        let rows: Vec<Vector> = kernel.basis_vectors().into_iter().chain(comp.iter().cloned()).chain(extra).collect();
        let m = Matrix::from_rows_with_cols(&rows, n)?;
        let coords = m.transpose().inverse().expect("extended basis is invertible");
        let projection = coords.block(k, 0, q, n);
        let section = Matrix::from_columns(&comp, n)?;
        Ok(QuotientSpace { ambient, kernel, projection, section })
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// `dim(quotient) × n`; meaningful on `ambient`.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `n × dim(quotient)`; columns are the chosen representatives.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.projection.apply(v)
    }

    pub fn try_project(&self, v: &[Scalar]) -> Result<Vector> {
        if !self.ambient.contains(v) {
            return Err(Error::DimMismatch("vector not in quotient numerator".into()));
        }
        Ok(self.project(v))
    }

    pub fn lift(&self, xbar: &[Scalar]) -> Vector {
        self.section.apply(xbar)
    }

    /// Image of a subspace of `ambient`, in quotient coordinates.
    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace> {
        if !self.ambient.contains_subspace(s) {
            return Err(Error::DimMismatch("subspace not in quotient numerator".into()));
        }
        s.image(&self.projection)
    }
}
