use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::{dot, Scalar, Vector};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Lagrangian,
    Isotropic,
    Coisotropic,
    None,
}

/// (positive, negative, zero) counts of a rational diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Symmetric bilinear form given by its Gram matrix; possibly degenerate.
///
/// The same type stores elements of `S²V` through their sharp map `V* -> V`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricForm {
    gram: Matrix,
}

impl SymmetricForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymmetricForm { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(Matrix::from_i64(rows)).expect("form literal not symmetric")
    }

    pub fn zero(n: usize) -> Self {
        SymmetricForm { gram: Matrix::zeros(n, n) }
    }

    /// Split form `[[0, I], [I, 0]]` on `Q^n ⊕ Q^n`.
    pub fn hyperbolic(n: usize) -> Self {
        let mut g = Matrix::zeros(2 * n, 2 * n);
        g.set_block(0, n, &Matrix::identity(n));
        g.set_block(n, 0, &Matrix::identity(n));
        SymmetricForm { gram: g }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// The sharp map, i.e. the Gram matrix viewed as `V* -> V`.
    pub fn sharp(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        dot(v, &self.gram.apply(w))
    }

    fn check(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimMismatch(format!("form on Q^{}, subspace in Q^{}", self.dim(), s.ambient_dim())));
        }
        Ok(())
    }

    pub fn orth_complement(&self, s: &Subspace) -> Result<Subspace> {
        self.check(s)?;
        Ok(Subspace::span(self.dim(), &s.basis().mul(&self.gram).kernel()))
    }

    pub fn classify(&self, s: &Subspace) -> Result<Classification> {
        let perp = self.orth_complement(s)?;
        let iso = perp.contains_subspace(s);
        let coiso = s.contains_subspace(&perp);
        Ok(match (iso, coiso) {
            (true, true) => Classification::Lagrangian,
            (true, false) => Classification::Isotropic,
            (false, true) => Classification::Coisotropic,
            (false, false) => Classification::None,
        })
    }

    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        matches!(self.classify(s), Ok(Classification::Isotropic | Classification::Lagrangian))
    }

    pub fn is_coisotropic(&self, s: &Subspace) -> bool {
        matches!(self.classify(s), Ok(Classification::Coisotropic | Classification::Lagrangian))
    }

    pub fn is_lagrangian(&self, s: &Subspace) -> bool {
        matches!(self.classify(s), Ok(Classification::Lagrangian))
    }

    pub fn radical(&self) -> Subspace {
        Subspace::span(self.dim(), &self.gram.kernel())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Gram matrix of the restriction to the span of the given row vectors.
    pub fn restrict(&self, rows: &Matrix) -> Matrix {
        rows.mul(&self.gram).mul(&rows.transpose())
    }

    /// Pull back along `f: W -> V`: `fᵀ G f`.
    pub fn pull_back(&self, f: &Matrix) -> SymmetricForm {
        SymmetricForm { gram: f.transpose().mul(&self.gram).mul(f) }
    }

    /// Push an element of `S²V` forward along `f: V -> W`: `f B fᵀ`.
    pub fn push_forward(&self, f: &Matrix) -> SymmetricForm {
        SymmetricForm { gram: f.mul(&self.gram).mul(&f.transpose()) }
    }

    pub fn inverse(&self) -> Option<SymmetricForm> {
        self.gram.inverse().map(|gram| SymmetricForm { gram })
    }

    pub fn direct_sum(&self, other: &SymmetricForm) -> SymmetricForm {
        SymmetricForm { gram: self.gram.block_diag(&other.gram) }
    }

    pub fn neg(&self) -> SymmetricForm {
        SymmetricForm { gram: self.gram.neg() }
    }

    /// `B#(ann W)` for this form read as an element of `S²V`.
    pub fn sharp_of_annihilator(&self, w: &Subspace) -> Result<Subspace> {
        self.check(w)?;
        w.annihilator().image(&self.gram)
    }

    /// Whether `B#(ann W) ⊆ W`.
    pub fn is_sharp_coisotropic(&self, w: &Subspace) -> Result<bool> {
        Ok(w.contains_subspace(&self.sharp_of_annihilator(w)?))
    }

    /// Whether `B#(ann W) = W`.
    pub fn is_sharp_lagrangian(&self, w: &Subspace) -> Result<bool> {
        Ok(*w == self.sharp_of_annihilator(w)?)
    }

    /// Signature of a rational congruence diagonalization.
    pub fn signature(&self) -> Signature {
        let d = self.diagonalize();
        Signature {
            positive: d.iter().filter(|x| x.is_positive()).count(),
            negative: d.iter().filter(|x| x.is_negative()).count(),
            zero: d.iter().filter(|x| x.is_zero()).count(),
        }
    }

    /// Diagonal entries of some `Pᵀ G P` with `P` invertible.
    pub fn diagonalize(&self) -> Vector {
        let n = self.dim();
        let mut a = self.gram.clone();
        let mut out = Vec::with_capacity(n);
        let mut k = 0;
        while k < n {
            if a[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                    swap_sym(&mut a, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // row/col k += row/col j makes the diagonal entry 2 a_kj.
                    add_sym(&mut a, k, j, &Scalar::one());
                }
            }
            let p = a[(k, k)].clone();
            if !p.is_zero() {
                for i in k + 1..n {
                    if !a[(i, k)].is_zero() {
                        let f = -(&a[(i, k)] / &p);
                        add_sym(&mut a, i, k, &f);
                    }
                }
            }
            out.push(p);
            k += 1;
        }
        out
    }
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// row_i += f row_j, then col_i += f col_j.
fn add_sym(a: &mut Matrix, i: usize, j: usize, f: &Scalar) {
    let n = a.rows();
    for c in 0..n {
        let v = f * &a[(j, c)];
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = f * &a[(r, j)];
        a[(r, i)] += v;
    }
}

impl std::fmt::Debug for SymmetricForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SymmetricForm({:?})", self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::vector;

    fn pairing4() -> SymmetricForm {
        SymmetricForm::hyperbolic(2)
    }

    #[test]
    fn hyperbolic_line_is_self_perpendicular() {
        let f = SymmetricForm::hyperbolic(1);
        let s = Subspace::span(2, &[vector(&[1, 0])]);
        assert_eq!(f.orth_complement(&s).unwrap(), s);
        assert_eq!(f.classify(&s).unwrap(), Classification::Lagrangian);
    }

    #[test]
    fn zero_form_perp_is_everything() {
        let f = SymmetricForm::zero(3);
        let s = Subspace::span(3, &[vector(&[1, 2, 3])]);
        assert!(f.orth_complement(&s).unwrap().is_full());
    }

    #[test]
    fn pairing_example_is_coisotropic() {
        let f = pairing4();
        let c = Subspace::span(4, &[vector(&[1, 0, 0, 0]), vector(&[0, 1, 0, 0]), vector(&[0, 0, 1, 0])]);
        // Oracle: v ⊥ c means v·G·c_i = 0 for each basis vector; G swaps halves,
        // so the conditions read v3 = v4 = v1 = 0.
        let perp = f.orth_complement(&c).unwrap();
        assert_eq!(perp, Subspace::span(4, &[vector(&[0, 1, 0, 0])]));
        assert_eq!(f.classify(&c).unwrap(), Classification::Coisotropic);
        assert_eq!(f.classify(&Subspace::full(4)).unwrap(), Classification::Coisotropic);
        assert_eq!(f.classify(&Subspace::zero(4)).unwrap(), Classification::Isotropic);
    }

    #[test]
    fn double_perp_for_nondegenerate() {
        let f = SymmetricForm::from_i64(&[&[1, 2, 0], &[2, 0, 1], &[0, 1, -1]]);
        assert!(f.is_nondegenerate());
        let s = Subspace::span(3, &[vector(&[1, 1, 0])]);
        let pp = f.orth_complement(&f.orth_complement(&s).unwrap()).unwrap();
        assert_eq!(pp, s);
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        assert_eq!(SymmetricForm::hyperbolic(2).signature(), Signature { positive: 2, negative: 2, zero: 0 });
        let f = SymmetricForm::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -3]]);
        assert_eq!(f.signature(), Signature { positive: 1, negative: 1, zero: 1 });
    }

    #[test]
    fn rejects_nonsymmetric() {
        assert_eq!(SymmetricForm::new(Matrix::from_i64(&[&[0, 1], &[0, 0]])), Err(Error::NotSymmetric));
    }
}
