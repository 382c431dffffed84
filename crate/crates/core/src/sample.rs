//! Seeded random instances for property checks and examples.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::linalg::scalar::{add, frac, int, scale, zeros, Scalar, Vector};
use crate::linalg::{Matrix, Subspace, SymmetricForm};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn integer<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// A rational in `[-bound, bound]` with denominator at most 3.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    let d = rng.gen_range(1..=3);
    frac(rng.gen_range(-bound * d..=bound * d), d)
}

pub fn vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| integer(rng, bound)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let rs: Vec<Vector> = (0..rows).map(|_| vector(rng, cols, bound)).collect();
    Matrix::from_rows_with_cols(&rs, cols).unwrap()
}

pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// Symmetric matrix with rational entries in `[-bound, bound]`.
pub fn symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> SymmetricForm {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rational(rng, bound);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    SymmetricForm::new(m).unwrap()
}

pub fn skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = integer(rng, bound);
            m[(j, i)] = -x.clone();
            m[(i, j)] = x;
        }
    }
    m
}

/// Span of `k` random vectors (dimension may drop below `k`).
pub fn subspace<R: Rng>(rng: &mut R, ambient: usize, k: usize) -> Subspace {
    let vs: Vec<Vector> = (0..k).map(|_| vector(rng, ambient, 2)).collect();
    Subspace::span(ambient, &vs)
}

/// Random integer combination of `basis`; zero vector of length `len` if empty.
pub fn combination<R: Rng>(rng: &mut R, basis: &[Vector], len: usize) -> Vector {
    basis.iter().fold(zeros(len), |acc, b| add(&acc, &scale(&integer(rng, 3), b)))
}

/// `l₀ + B#(ann l₀)`, which is always `B`-coisotropic.
pub fn sharp_coisotropic<R: Rng>(rng: &mut R, beta: &SymmetricForm, k: usize) -> Subspace {
    let l0 = subspace(rng, beta.dim(), k);
    l0.sum(&beta.sharp_of_annihilator(&l0).unwrap()).unwrap()
}

/// A nondegenerate form `Aᵀ (H_m ⊕ D) A` and a random Lagrangian of its hyperbolic part, transported.
pub struct SplitForm {
    pub form: SymmetricForm,
    /// `m`-dimensional isotropic subspaces of this are isotropic.
    pub lagrangian: Subspace,
    /// A second, independently chosen maximal isotropic subspace.
    pub other_lagrangian: Subspace,
}

pub fn split_form<R: Rng>(rng: &mut R, m: usize, extra: usize) -> SplitForm {
    let n = 2 * m + extra;
    let diag: Vec<Scalar> = (0..extra).map(|_| int(if rng.gen_bool(0.5) { 1 } else { -2 })).collect();
    let base = SymmetricForm::hyperbolic(m).direct_sum(&SymmetricForm::new(Matrix::diagonal(&diag)).unwrap());
    let a = invertible(rng, n, 2);
    let ainv = a.inverse().unwrap();
    let graph = |rng: &mut R| {
        // {(x, Sx)} for skew S is Lagrangian in the hyperbolic block.
        let s = skew(rng, m, 2);
        let vs: Vec<Vector> = (0..m)
            .map(|i| {
                let mut v = zeros(n);
                v[i] = int(1);
                for r in 0..m {
                    v[m + r] = s[(r, i)].clone();
                }
                ainv.apply(&v)
            })
            .collect();
        Subspace::span(n, &vs)
    };
    let lagrangian = graph(rng);
    let other_lagrangian = graph(rng);
    SplitForm { form: base.pull_back(&a), lagrangian, other_lagrangian }
}

/// Random subspace of `s` spanned by `k` random combinations.
pub fn subspace_of<R: Rng>(rng: &mut R, s: &Subspace, k: usize) -> Subspace {
    let vs: Vec<Vector> = (0..k).map(|_| combination(rng, &s.basis_vectors(), s.ambient_dim())).collect();
    Subspace::span(s.ambient_dim(), &vs)
}
