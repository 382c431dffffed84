//! Lie algebras by structure constants, invariant symmetric elements, and Dirac Manin triples.

use num_traits::Zero;

use crate::check::{witness, Check, ValidationReport, Witness};
use crate::error::{Error, Result};
use crate::linalg::scalar::{add, is_zero_vec, scale, zeros, Scalar, Vector};
use crate::linalg::{int, Matrix, Subspace, SymmetricForm};

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // brackets[i * dim + j] = [e_i, e_j]
    brackets: Vec<Vector>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, brackets: vec![zeros(dim); dim * dim] }
    }

    /// Builds from `(i, j, [e_i, e_j])` entries with `i != j`; the reverse bracket is implied.
    /// Antisymmetry is enforced, Jacobi is not checked.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut a = Self::abelian(dim);
        let mut set = vec![false; dim * dim];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::DimMismatch(format!("bracket entry ({i}, {j}) out of range for dim {dim}")));
            }
            if i == j {
                if !is_zero_vec(v) {
                    return Err(Error::InvalidLieAlgebra(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let neg = scale(&int(-1), v);
            for (idx, val) in [(i * dim + j, v.clone()), (j * dim + i, neg)] {
                if set[idx] && a.brackets[idx] != val {
                    return Err(Error::InvalidLieAlgebra(format!("conflicting entries for [e{i}, e{j}]")));
                }
                set[idx] = true;
                a.brackets[idx] = val;
            }
        }
        Ok(a)
    }

    /// Like `from_brackets`, and additionally checks the Jacobi identity.
    pub fn new(dim: usize, entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let a = Self::from_brackets(dim, entries)?;
        match a.jacobi_witness() {
            Some((i, j, k)) => Err(Error::JacobiFailure(i, j, k)),
            None => Ok(a),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.brackets[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (o, b) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    /// `ad_x` as a matrix: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &crate::linalg::scalar::unit(self.dim, j))).collect();
        Matrix::from_columns(&cols, self.dim).unwrap()
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket_basis(i, j).clone()).collect();
        Matrix::from_columns(&cols, self.dim).unwrap()
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let b = self.bracket_basis(i, j);
                if !is_zero_vec(b) {
                    out.push((i, j, b.clone()));
                }
            }
        }
        out
    }

    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i| crate::linalg::scalar::unit(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(self.bracket_basis(i, j), &e(k));
                    let b = self.bracket(self.bracket_basis(j, k), &e(i));
                    let c = self.bracket(self.bracket_basis(k, i), &e(j));
                    if !is_zero_vec(&add(&add(&a, &b), &c)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut a = Self::abelian(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut v = self.bracket_basis(i, j).clone();
                v.extend(zeros(other.dim));
                a.brackets[i * n + j] = v;
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                let mut v = zeros(self.dim);
                v.extend(other.bracket_basis(i, j).iter().cloned());
                a.brackets[(self.dim + i) * n + self.dim + j] = v;
            }
        }
        a
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {}, {:?})", self.dim, self.entries())
    }
}

pub fn jacobi_check(a: &LieAlgebra) -> bool {
    a.jacobi_witness().is_none()
}

/// First pair of canonical basis indices whose bracket leaves `s`.
pub fn subalgebra_witness(a: &LieAlgebra, s: &Subspace) -> Option<(usize, usize)> {
    let b = s.basis_vectors();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !s.contains(&a.bracket(&b[i], &b[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_subalgebra(a: &LieAlgebra, s: &Subspace) -> bool {
    s.ambient_dim() == a.dim() && subalgebra_witness(a, s).is_none()
}

/// `[A, S] ⊆ S`, checked on standard basis of the algebra against the basis of `s`.
pub fn is_ideal(a: &LieAlgebra, s: &Subspace) -> bool {
    s.ambient_dim() == a.dim()
        && (0..a.dim()).all(|i| {
            let x = crate::linalg::scalar::unit(a.dim(), i);
            s.basis_vectors().iter().all(|v| s.contains(&a.bracket(&x, v)))
        })
}

/// Whether `[k, c] ⊆ c`.
pub fn bracket_stable(a: &LieAlgebra, k: &Subspace, c: &Subspace) -> Option<(usize, usize)> {
    for (i, x) in k.basis_vectors().iter().enumerate() {
        for (j, y) in c.basis_vectors().iter().enumerate() {
            if !c.contains(&a.bracket(x, y)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn killing_form(a: &LieAlgebra) -> SymmetricForm {
    let n = a.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| a.ad_basis(i)).collect();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = ads[i].mul(&ads[j]).trace();
        }
    }
    SymmetricForm::new(g).expect("trace form is symmetric")
}

/// Ad-invariance of an element `B ∈ S²d` (stored via `B#`): `ad_x B# + B# ad_xᵀ = 0`.
/// Returns `(i, j, k)`: basis element `e_i` and the offending entry.
pub fn invariance_witness(a: &LieAlgebra, beta: &SymmetricForm) -> Option<(usize, usize, usize)> {
    let b = beta.sharp();
    for i in 0..a.dim() {
        let ad = a.ad_basis(i);
        let m = ad.mul(b).add(&b.mul(&ad.transpose()));
        for j in 0..a.dim() {
            for k in 0..a.dim() {
                if !m[(j, k)].is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Invariance of a bilinear form (metric): `⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0`.
pub fn metric_invariance_witness(a: &LieAlgebra, metric: &SymmetricForm) -> Option<(usize, usize, usize)> {
    let g = metric.gram();
    for i in 0..a.dim() {
        let ad = a.ad_basis(i);
        let m = ad.transpose().mul(g).add(&g.mul(&ad));
        for j in 0..a.dim() {
            for k in 0..a.dim() {
                if !m[(j, k)].is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// A Lie algebra with an ad-invariant, possibly degenerate `β ∈ S²d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticLieData {
    pub algebra: LieAlgebra,
    /// `β#: d* -> d`.
    pub beta: SymmetricForm,
}

impl QuadraticLieData {
    pub fn new(algebra: LieAlgebra, beta: SymmetricForm) -> Result<Self> {
        if beta.dim() != algebra.dim() {
            return Err(Error::InvalidQuadraticData(format!("beta on Q^{}, algebra of dim {}", beta.dim(), algebra.dim())));
        }
        if let Some((i, j, k)) = invariance_witness(&algebra, &beta) {
            return Err(Error::InvalidQuadraticData(format!("beta not ad-invariant at e{i}, entry ({j},{k})")));
        }
        Ok(QuadraticLieData { algebra, beta })
    }

    /// From a nondegenerate invariant metric; `β` is its inverse.
    pub fn from_metric(algebra: LieAlgebra, metric: &SymmetricForm) -> Result<Self> {
        let beta = metric.inverse().ok_or_else(|| Error::InvalidQuadraticData("metric is degenerate".into()))?;
        Self::new(algebra, beta)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The metric `β⁻¹`, when `β` is nondegenerate.
    pub fn metric(&self) -> Option<SymmetricForm> {
        self.beta.inverse()
    }
}

/// `h ⋉ h*` with the coadjoint action and `β` the canonical pairing.
/// Basis: `e_0..e_{n-1}` of `h` followed by the dual basis.
pub fn semidirect_double(h: &LieAlgebra) -> QuadraticLieData {
    drinfeld_double(h, &LieAlgebra::abelian(h.dim())).expect("semidirect double satisfies Jacobi")
}

/// The double `h ⋈ h*` of two algebras on dual bases. Jacobi is verified, not assumed.
pub fn drinfeld_double(h: &LieAlgebra, hstar: &LieAlgebra) -> Result<QuadraticLieData> {
    let n = h.dim();
    if hstar.dim() != n {
        return Err(Error::DimMismatch(format!("h has dim {n}, hstar has dim {}", hstar.dim())));
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = h.bracket_basis(i, j).clone();
            v.extend(zeros(n));
            entries.push((i, j, v));
            let mut w = zeros(n);
            w.extend(hstar.bracket_basis(i, j).iter().cloned());
            entries.push((n + i, n + j, w));
        }
    }
    for i in 0..n {
        for j in 0..n {
            // [e_i, ε_j] = (-ad*_{ε_j} e_i, ad*_{e_i} ε_j)
            let mut v = zeros(2 * n);
            for k in 0..n {
                v[k] = hstar.bracket_basis(j, k)[i].clone();
                v[n + k] = -h.bracket_basis(i, k)[j].clone();
            }
            entries.push((i, n + j, v));
        }
    }
    let d = LieAlgebra::new(2 * n, &entries)?;
    QuadraticLieData::new(d, SymmetricForm::hyperbolic(n))
}

/// `(ḡ ⊕ g, g_Δ, 0 ⊕ g)` with metric `(−K) ⊕ K`, for `g` carrying a nondegenerate `β = K⁻¹`.
pub fn cartan_dirac(g: &QuadraticLieData) -> Result<DiracManinTriple> {
    if !g.beta.is_nondegenerate() {
        return Err(Error::InvalidQuadraticData("cartan_dirac needs a nondegenerate form".into()));
    }
    if invariance_witness(&g.algebra, &g.beta).is_some() {
        return Err(Error::InvalidQuadraticData("form is not ad-invariant".into()));
    }
    let n = g.dim();
    let d = g.algebra.direct_sum(&g.algebra);
    let beta = g.beta.neg().direct_sum(&g.beta);
    let quad = QuadraticLieData::new(d, beta).map_err(|e| Error::InvalidQuadraticData(e.to_string()))?;
    let diag: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v = zeros(2 * n);
            v[i] = int(1);
            v[n + i] = int(1);
            v
        })
        .collect();
    let g_delta = Subspace::span(2 * n, &diag);
    let h = Subspace::coordinate(2 * n, &(n..2 * n).collect::<Vec<_>>());
    DiracManinTriple::new(quad, g_delta, h, vec![]).map_err(|e| Error::InvalidQuadraticData(e.to_string()))
}

/// `(d, g, h)_β`; `k_generators` are optional finite automorphisms of `d` standing in for `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracManinTriple {
    pub quad: QuadraticLieData,
    pub g: Subspace,
    pub h: Subspace,
    pub k_generators: Vec<Matrix>,
}

impl DiracManinTriple {
    pub fn new(quad: QuadraticLieData, g: Subspace, h: Subspace, k_generators: Vec<Matrix>) -> Result<Self> {
        let t = Self::new_unchecked(quad, g, h, k_generators);
        let r = validate_triple(&t);
        if r.passed() { Ok(t) } else { Err(Error::InvalidTriple(r.summary())) }
    }

    pub fn new_unchecked(quad: QuadraticLieData, g: Subspace, h: Subspace, k_generators: Vec<Matrix>) -> Self {
        DiracManinTriple { quad, g, h, k_generators }
    }

    pub fn dim(&self) -> usize {
        self.quad.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.quad.algebra
    }

    pub fn beta(&self) -> &SymmetricForm {
        &self.quad.beta
    }

    /// `pr'_g: d -> g` along `h`, in coordinates of `g`'s canonical basis.
    pub fn pr_g(&self) -> Matrix {
        split_projection(&self.g, &self.h).0
    }

    /// `pr'_h: d -> h` along `g`, in coordinates of `h`'s canonical basis.
    pub fn pr_h(&self) -> Matrix {
        split_projection(&self.g, &self.h).1
    }
}

/// For `d = a ⊕ b`, the coordinate projections onto `a` and `b`.
pub(crate) fn split_projection(a: &Subspace, b: &Subspace) -> (Matrix, Matrix) {
    let basis = a.inclusion().hstack(&b.inclusion());
    let inv = basis.inverse().expect("subspaces are complementary");
    (inv.block(0, 0, a.dim(), inv.cols()), inv.block(a.dim(), 0, b.dim(), inv.cols()))
}

fn sub_witness(a: &LieAlgebra, s: &Subspace) -> Option<Witness> {
    subalgebra_witness(a, s).map(|(i, j)| witness(vec![i, j], format!("bracket of basis vectors {i} and {j} leaves the subspace")))
}

pub fn validate_triple(t: &DiracManinTriple) -> ValidationReport {
    let mut r = ValidationReport::default();
    let a = t.algebra();
    let n = a.dim();
    let dims_ok = t.g.ambient_dim() == n && t.h.ambient_dim() == n && t.beta().dim() == n;
    if !dims_ok {
        r.push(Check::fail("dimensions", vec![], "g, h, beta must live in d"));
        return r;
    }
    r.push(Check::from_witness(
        "jacobi",
        a.jacobi_witness().map(|(i, j, k)| witness(vec![i, j, k], "Jacobi identity fails")),
    ));
    r.push(if t.beta().gram().is_symmetric() { Check::pass("beta_symmetric") } else { Check::fail("beta_symmetric", vec![], "beta not symmetric") });
    r.push(Check::from_witness(
        "ad_invariance",
        invariance_witness(a, t.beta()).map(|(i, j, k)| witness(vec![i, j, k], format!("ad_e{i} beta + beta ad_e{i}^T nonzero at ({j},{k})"))),
    ));
    r.push(Check::from_witness("g_subalgebra", sub_witness(a, &t.g)));
    r.push(Check::from_witness("h_subalgebra", sub_witness(a, &t.h)));
    let inter = t.g.intersection(&t.h).unwrap();
    let transverse = inter.is_zero() && t.g.dim() + t.h.dim() == n;
    r.push(if transverse {
        Check::pass("transversality")
    } else {
        Check::fail("transversality", vec![], format!("dim g = {}, dim h = {}, dim(g ∩ h) = {}", t.g.dim(), t.h.dim(), inter.dim()))
    });
    let ann = t.g.annihilator();
    let bad = ann.basis_vectors().iter().position(|alpha| !t.g.contains(&t.beta().sharp().apply(alpha)));
    r.push(Check::from_witness("g_beta_coisotropic", bad.map(|i| witness(vec![i], format!("beta# of annihilator basis vector {i} is not in g")))));
    r.push(Check::from_witness("k_generators", k_generator_witness(t)));
    r
}

fn k_generator_witness(t: &DiracManinTriple) -> Option<Witness> {
    let a = t.algebra();
    let n = a.dim();
    for (gi, m) in t.k_generators.iter().enumerate() {
        if m.rows() != n || m.cols() != n || m.rank() != n {
            return Some(witness(vec![gi], "generator is not an invertible map of d"));
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = m.apply(a.bracket_basis(i, j));
                let rhs = a.bracket(&m.col(i), &m.col(j));
                if lhs != rhs {
                    return Some(witness(vec![gi, i, j], "generator is not a Lie algebra automorphism"));
                }
            }
        }
        if t.beta().push_forward(m) != *t.beta() {
            return Some(witness(vec![gi], "generator does not preserve beta"));
        }
        if t.h.image(m).unwrap() != t.h {
            return Some(witness(vec![gi], "generator does not preserve h"));
        }
    }
    None
}

/// The two-dimensional nonabelian algebra `[x, y] = y`.
pub fn nonabelian2() -> LieAlgebra {
    LieAlgebra::new(2, &[(0, 1, vec![int(0), int(1)])]).unwrap()
}

/// `sl₂` in the basis `(e, h, f)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(3, &[(0, 2, crate::linalg::scalar::vector(&[0, 1, 0])), (1, 0, crate::linalg::scalar::vector(&[2, 0, 0])), (1, 2, crate::linalg::scalar::vector(&[0, 0, -2]))]).unwrap()
}

/// The standard triple `(h ⋉ h*, h*, h)` with `β` the pairing.
pub fn standard_triple(h: &LieAlgebra) -> DiracManinTriple {
    let n = h.dim();
    let quad = semidirect_double(h);
    let hs = Subspace::coordinate(2 * n, &(0..n).collect::<Vec<_>>());
    let gs = Subspace::coordinate(2 * n, &(n..2 * n).collect::<Vec<_>>());
    DiracManinTriple::new(quad, gs, hs, vec![]).expect("standard triple is valid")
}

/// Cartan-Dirac triple of `sl₂` with its Killing form.
pub fn cartan_dirac_sl2() -> DiracManinTriple {
    let g = sl2();
    let k = killing_form(&g);
    cartan_dirac(&QuadraticLieData::from_metric(g, &k).unwrap()).unwrap()
}
