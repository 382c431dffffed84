use super::matrix::Matrix;
use super::scalar::{is_zero_vec, sub, Scalar, Vector};
use crate::error::{Error, Result};

/// A subspace of `Q^n`, stored by its reduced row-echelon basis, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of `vectors`. Panics if a vector has the wrong length; see [`Subspace::try_span`].
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        Self::try_span(ambient, vectors).unwrap()
    }

    pub fn try_span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows_with_cols(vectors, ambient)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0, 0, pivots.len(), m.cols());
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let vs: Vec<Vector> = idx.iter().map(|&i| super::scalar::unit(ambient, i)).collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis; `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "coords: vector length mismatch");
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.basis.transpose().apply(&c);
        is_zero_vec(&sub(v, &rebuilt)).then_some(c)
    }

    /// Matrix whose columns are the canonical basis vectors (the inclusion map in coordinates).
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Annihilator in the dual space, written in the dual basis.
    pub fn annihilator(&self) -> Subspace {
        Self::span(self.ambient, &self.basis.kernel())
    }

    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimMismatch(format!("map has {} columns, subspace ambient {}", map.cols(), self.ambient)));
        }
        Ok(Self::column_space(&map.mul(&self.inclusion())))
    }

    /// `{v : map(v) ∈ self}`.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient {
            return Err(Error::DimMismatch(format!("map has {} rows, subspace ambient {}", map.rows(), self.ambient)));
        }
        let ann = self.annihilator();
        let cond = ann.basis().mul(map);
        Ok(Self::span(map.cols(), &cond.kernel()))
    }

    /// Vectors from this subspace's canonical basis that, added greedily in order,
    /// complete a basis of `sub` to a basis of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vector> {
        let mut acc = sub.basis().clone();
        let mut rank = sub.dim();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            let trial = acc.vstack(&Matrix::from_rows_with_cols(&[v.clone()], self.ambient).unwrap());
            let r = trial.rank();
            if r > rank {
                acc = trial;
                rank = r;
                out.push(v);
            }
        }
        out
    }

    /// Canonical basis flattened; used as a deterministic sort key.
    pub fn sort_key(&self) -> (usize, Vec<Scalar>) {
        (self.dim(), self.basis.entries().to_vec())
    }

    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        Self::row_space(&self.basis.block_diag(&other.basis))
    }

    pub fn is_trivial_intersection(&self, other: &Subspace) -> bool {
        self.sum(other).map(|s| s.dim() == self.dim() + other.dim()).unwrap_or(false)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(Q^{}, {:?})", self.ambient, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::vector;

    #[test]
    fn complementary_lines_sum_to_plane() {
        let a = Subspace::span(2, &[vector(&[1, 0])]);
        let b = Subspace::span(2, &[vector(&[0, 1])]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
        assert!(a.intersection(&b).unwrap().is_zero());
    }

    #[test]
    fn intersection_with_contained_subspace() {
        let v = Subspace::span(3, &[vector(&[1, 0, 0]), vector(&[0, 1, 1])]);
        let w = Subspace::span(3, &[vector(&[2, 1, 1])]);
        assert_eq!(v.intersection(&w).unwrap(), w);
    }

    #[test]
    fn preimage_of_line_under_sum_map() {
        // (x, y) -> x + y; span{1} in Q^1 pulls back to everything.
        let m = Matrix::from_i64(&[&[1, 1]]);
        let target = Subspace::span(1, &[vector(&[1])]);
        let pre = target.preimage(&m).unwrap();
        // Oracle: solve m v = t for each basis of target and add ker m by hand.
        let hand = Subspace::span(2, &[vector(&[1, 0]), vector(&[1, -1])]);
        assert_eq!(pre, hand);
        assert_eq!(Subspace::zero(1).preimage(&m).unwrap(), Subspace::span(2, &[vector(&[1, -1])]));
    }

    #[test]
    fn annihilator_examples() {
        assert!(Subspace::full(3).annihilator().is_zero());
        assert!(Subspace::zero(3).annihilator().is_full());
        let e1 = Subspace::span(3, &[vector(&[1, 0, 0])]);
        assert_eq!(e1.annihilator(), Subspace::span(3, &[vector(&[0, 1, 0]), vector(&[0, 0, 1])]));
        assert_eq!(e1.annihilator().annihilator(), e1);
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(3, &[vector(&[1, 2, 3]), vector(&[0, 1, 1])]);
        let b = Subspace::span(3, &[vector(&[1, 3, 4]), vector(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.coords(&vector(&[1, 3, 4])).unwrap().len(), 2);
        assert!(!a.contains(&vector(&[0, 0, 1])));
    }
}
