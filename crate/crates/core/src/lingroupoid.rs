//! Linear groupoids `q ⇉ g`, their metrized versions, modules, duals and homogeneous spaces.

use rand::Rng;

use crate::check::{Check, ValidationReport};
use crate::error::{Error, Result};
use crate::linalg::scalar::{add, concat, dot, sub, zeros, Scalar, Vector};
use crate::linalg::{coisotropic_reduce, Matrix, QuotientSpace, Subspace, SymmetricForm};
use crate::sample;

/// `q` with unit subspace `g` and source/target projections onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGroupoid {
    units: Subspace,
    s: Matrix,
    t: Matrix,
}

impl LinearGroupoid {
    pub fn new(units: Subspace, s: Matrix, t: Matrix) -> Result<Self> {
        let n = units.ambient_dim();
        let bad = |m: &str| Err(Error::InvalidGroupoid(m.into()));
        if s.rows() != n || s.cols() != n || t.rows() != n || t.cols() != n {
            return bad("s and t must be square of size dim q");
        }
        for (name, p) in [("s", &s), ("t", &t)] {
            if p.mul(p) != *p {
                return bad(&format!("{name} is not idempotent"));
            }
            if Subspace::column_space(p) != units {
                return bad(&format!("image of {name} is not the unit space"));
            }
        }
        Ok(LinearGroupoid { units, s, t })
    }

    pub fn q_dim(&self) -> usize {
        self.units.ambient_dim()
    }

    pub fn g_dim(&self) -> usize {
        self.units.dim()
    }

    pub fn units(&self) -> &Subspace {
        &self.units
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    /// `s` in coordinates of the canonical unit basis (`g_dim × q_dim`).
    pub fn s_g(&self) -> Matrix {
        self.s.select_rows(self.units.pivots())
    }

    /// `t` in coordinates of the canonical unit basis.
    pub fn t_g(&self) -> Matrix {
        self.t.select_rows(self.units.pivots())
    }

    pub fn ker_s(&self) -> Subspace {
        Subspace::span(self.q_dim(), &self.s.kernel())
    }

    pub fn ker_t(&self) -> Subspace {
        Subspace::span(self.q_dim(), &self.t.kernel())
    }

    pub fn is_composable(&self, xi: &[Scalar], eta: &[Scalar]) -> bool {
        self.s.apply(xi) == self.t.apply(eta)
    }

    /// `ξ∘η = η + (1−s)ξ`.
    pub fn multiply(&self, xi: &[Scalar], eta: &[Scalar]) -> Result<Vector> {
        self.check_len(xi)?;
        self.check_len(eta)?;
        if !self.is_composable(xi, eta) {
            return Err(Error::NotComposable("s(xi) != t(eta)".into()));
        }
        Ok(add(eta, &sub(xi, &self.s.apply(xi))))
    }

    /// `ξ⁻¹ = s(ξ) + t(ξ) − ξ`.
    pub fn inverse(&self, xi: &[Scalar]) -> Vector {
        sub(&add(&self.s.apply(xi), &self.t.apply(xi)), xi)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.q_dim() {
            return Err(Error::DimMismatch(format!("element of length {}, q has dim {}", v.len(), self.q_dim())));
        }
        Ok(())
    }

    /// Basis of composable pairs `(ξ, η)`, as vectors of length `2 dim q`.
    pub fn composable_pairs(&self) -> Vec<Vector> {
        self.s.hstack(&self.t.neg()).kernel()
    }

    /// Basis of composable triples `(ξ₁, ξ₂, ξ₃)`.
    pub fn composable_triples(&self) -> Vec<Vector> {
        let n = self.q_dim();
        let mut m = Matrix::zeros(2 * n, 3 * n);
        m.set_block(0, 0, &self.s);
        m.set_block(0, n, &self.t.neg());
        m.set_block(n, n, &self.s);
        m.set_block(n, 2 * n, &self.t.neg());
        m.kernel()
    }

    /// Groupoid axioms as identities on bases of the relevant linear spaces.
    pub fn axiom_report(&self) -> ValidationReport {
        let n = self.q_dim();
        let mut r = ValidationReport::default();
        let triples = self.composable_triples();
        let assoc = triples.iter().position(|v| {
            let (a, b, c) = (&v[..n], &v[n..2 * n], &v[2 * n..]);
            let left = self.multiply(&self.multiply(a, b).unwrap(), c).unwrap();
            let right = self.multiply(a, &self.multiply(b, c).unwrap()).unwrap();
            left != right
        });
        r.push(Check::from_witness("associativity", assoc.map(|i| crate::check::witness(vec![i], "triple basis vector"))).with_count(triples.len()));
        let basis: Vec<Vector> = (0..n).map(|i| crate::linalg::scalar::unit(n, i)).collect();
        let unit_law = basis.iter().position(|x| {
            self.multiply(&self.t.apply(x), x).unwrap() != *x || self.multiply(x, &self.s.apply(x)).unwrap() != *x
        });
        r.push(Check::from_witness("unit_laws", unit_law.map(|i| crate::check::witness(vec![i], "basis vector"))).with_count(n));
        let inv_law = basis.iter().position(|x| {
            let xi = self.inverse(x);
            self.multiply(&xi, x).ok() != Some(self.s.apply(x)) || self.multiply(x, &xi).ok() != Some(self.t.apply(x))
        });
        r.push(Check::from_witness("inverse_laws", inv_law.map(|i| crate::check::witness(vec![i], "basis vector"))).with_count(n));
        let pairs = self.composable_pairs();
        let st = pairs.iter().position(|v| {
            let (a, b) = (&v[..n], &v[n..]);
            let p = self.multiply(a, b).unwrap();
            self.s.apply(&p) != self.s.apply(b) || self.t.apply(&p) != self.t.apply(a)
        });
        r.push(Check::from_witness("source_target_laws", st.map(|i| crate::check::witness(vec![i], "pair basis vector"))).with_count(pairs.len()));
        r
    }
}

pub fn groupoid_multiply(gpd: &LinearGroupoid, xi: &[Scalar], eta: &[Scalar]) -> Result<Vector> {
    gpd.multiply(xi, eta)
}

/// Dual groupoid on `q*`: units `ann(g)`, target `(1−s)ᵀ`, source `(1−t)ᵀ`.
pub fn dual_groupoid(gpd: &LinearGroupoid) -> LinearGroupoid {
    let id = Matrix::identity(gpd.q_dim());
    LinearGroupoid::new(gpd.units.annihilator(), id.sub(&gpd.t).transpose(), id.sub(&gpd.s).transpose())
        .expect("dual of a linear groupoid is a linear groupoid")
}

/// `⟨α∘τ, ξ∘ζ⟩ = ⟨α,ξ⟩ + ⟨τ,ζ⟩` over bases of composable pairs on both sides.
pub fn dual_pairing_identity(gpd: &LinearGroupoid, dual: &LinearGroupoid) -> bool {
    let n = gpd.q_dim();
    let prim = gpd.composable_pairs();
    let dpairs = dual.composable_pairs();
    dpairs.iter().all(|d| {
        let (alpha, tau) = (&d[..n], &d[n..]);
        let at = dual.multiply(alpha, tau).unwrap();
        prim.iter().all(|p| {
            let (xi, zeta) = (&p[..n], &p[n..]);
            let xz = gpd.multiply(xi, zeta).unwrap();
            dot(&at, &xz) == dot(alpha, xi) + dot(tau, zeta)
        })
    })
}

/// A linear groupoid with a multiplicative metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetrizedLinearGroupoid {
    base: LinearGroupoid,
    metric: SymmetricForm,
}

impl MetrizedLinearGroupoid {
    pub fn new(base: LinearGroupoid, metric: SymmetricForm) -> Result<Self> {
        let m = MetrizedLinearGroupoid { base, metric };
        let r = m.validation_report();
        if r.passed() { Ok(m) } else { Err(Error::InvalidGroupoid(r.summary())) }
    }

    pub fn base(&self) -> &LinearGroupoid {
        &self.base
    }

    pub fn metric(&self) -> &SymmetricForm {
        &self.metric
    }

    pub fn q_dim(&self) -> usize {
        self.base.q_dim()
    }

    pub fn g_dim(&self) -> usize {
        self.base.g_dim()
    }

    pub fn validation_report(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        if self.metric.dim() != self.q_dim() {
            r.push(Check::fail("dimensions", vec![], "metric size differs from dim q"));
            return r;
        }
        let nondeg = self.metric.is_nondegenerate();
        r.push(if nondeg { Check::pass("metric_nondegenerate") } else { Check::fail("metric_nondegenerate", vec![], "metric has a radical") });
        if !nondeg {
            return r;
        }
        let units_lag = self.metric.is_lagrangian(self.base.units());
        r.push(if units_lag { Check::pass("units_lagrangian") } else { Check::fail("units_lagrangian", vec![], "g != g⊥") });
        let kers = self.metric.orth_complement(&self.base.ker_t()).unwrap() == self.base.ker_s();
        r.push(if kers { Check::pass("ker_s_is_ker_t_perp") } else { Check::fail("ker_s_is_ker_t_perp", vec![], "ker(s) != ker(t)⊥") });
        r.push(self.multiplicativity_check());
        r
    }

    /// `⟨ξ₁∘η₁, ξ₂∘η₂⟩ = ⟨ξ₁,ξ₂⟩ + ⟨η₁,η₂⟩` on a basis of composable pairs.
    pub fn multiplicativity_check(&self) -> Check {
        let n = self.q_dim();
        let pairs = self.base.composable_pairs();
        let prods: Vec<Vector> = pairs.iter().map(|p| self.base.multiply(&p[..n], &p[n..]).unwrap()).collect();
        for a in 0..pairs.len() {
            for b in a..pairs.len() {
                let lhs = self.metric.eval(&prods[a], &prods[b]);
                let rhs = self.metric.eval(&pairs[a][..n], &pairs[b][..n]) + self.metric.eval(&pairs[a][n..], &pairs[b][n..]);
                if lhs != rhs {
                    return Check::fail("metric_multiplicative", vec![a, b], "pair basis vectors");
                }
            }
        }
        Check::pass("metric_multiplicative").with_count(pairs.len() * (pairs.len() + 1) / 2)
    }

    /// `t* = G⁻¹ t_gᵀ : g* -> q`.
    pub fn t_star(&self) -> Matrix {
        self.metric.inverse().expect("metric nondegenerate").gram().mul(&self.base.t_g().transpose())
    }

    /// `φ: g ⊕ g* -> q`, `(ζ, α) ↦ ζ + t*(α)`, using the canonical unit basis for `g`.
    pub fn canonical_identification(&self) -> Matrix {
        self.base.units().inclusion().hstack(&self.t_star())
    }
}

/// `λ ∈ S²g`, stored as `λ#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaDatum {
    pub lambda: SymmetricForm,
}

impl LambdaDatum {
    pub fn new(lambda: SymmetricForm) -> Self {
        LambdaDatum { lambda }
    }

    pub fn g_dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn sharp(&self) -> &Matrix {
        self.lambda.sharp()
    }

    /// `λ#(ann l) ⊆ l`.
    pub fn is_coisotropic(&self, l: &Subspace) -> Result<bool> {
        self.lambda.is_sharp_coisotropic(l)
    }
}

/// Normal form `q = g ⊕ g*` with `s(ζ,α) = ζ`, `t(ζ,α) = ζ + λ#α`, and
/// `⟨(ζ₁,α₁),(ζ₂,α₂)⟩ = α₂(ζ₁) + α₁(ζ₂) + λ(α₁,α₂)`.
pub fn from_lambda(d: &LambdaDatum) -> MetrizedLinearGroupoid {
    let n = d.g_dim();
    let units = Subspace::coordinate(2 * n, &(0..n).collect::<Vec<_>>());
    let mut s = Matrix::zeros(2 * n, 2 * n);
    s.set_block(0, 0, &Matrix::identity(n));
    let mut t = s.clone();
    t.set_block(0, n, d.sharp());
    let mut g = SymmetricForm::hyperbolic(n).gram().clone();
    g.set_block(n, n, d.sharp());
    let base = LinearGroupoid::new(units, s, t).expect("normal form projections");
    MetrizedLinearGroupoid::new(base, SymmetricForm::new(g).unwrap()).expect("normal form is metrized")
}

/// `λ# = t ∘ t*|_{g*}` in the canonical unit basis.
pub fn to_lambda(m: &MetrizedLinearGroupoid) -> Result<LambdaDatum> {
    let r = m.validation_report();
    if !r.passed() {
        return Err(Error::InvalidGroupoid(r.summary()));
    }
    let l = m.base.t_g().mul(&m.t_star());
    Ok(LambdaDatum { lambda: SymmetricForm::new(l).map_err(|_| Error::InvalidGroupoid("t t* not symmetric".into()))? })
}

/// Transports `m` along its canonical identification; returns the normal-form groupoid and `φ`.
pub fn to_normal_form(m: &MetrizedLinearGroupoid) -> Result<(MetrizedLinearGroupoid, Matrix)> {
    to_lambda(m)?;
    let phi = m.canonical_identification();
    let inv = phi.inverse().ok_or_else(|| Error::InvalidGroupoid("canonical identification not invertible".into()))?;
    let units = m.base.units().preimage(&phi)?;
    let s = inv.mul(m.base.s()).mul(&phi);
    let t = inv.mul(m.base.t()).mul(&phi);
    let base = LinearGroupoid::new(units, s, t)?;
    Ok((MetrizedLinearGroupoid::new(base, m.metric.pull_back(&phi))?, phi))
}

/// Module over the normal form `from_lambda(λ)`: `(ζ,α)∘x = x + u*(α)` with `u* = G_p⁻¹uᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetrizedModule {
    lambda: LambdaDatum,
    metric: SymmetricForm,
    u: Matrix,
}

impl MetrizedModule {
    pub fn new(lambda: LambdaDatum, metric: SymmetricForm, u: Matrix) -> Result<Self> {
        let p = metric.dim();
        if u.rows() != lambda.g_dim() || u.cols() != p {
            return Err(Error::DimMismatch(format!("u is {}x{}, expected {}x{p}", u.rows(), u.cols(), lambda.g_dim())));
        }
        let inv = metric.inverse().ok_or_else(|| Error::InvalidModule("metric on p is degenerate".into()))?;
        if u.mul(inv.gram()).mul(&u.transpose()) != *lambda.sharp() {
            return Err(Error::InvalidModule("u u* != lambda#".into()));
        }
        Ok(MetrizedModule { lambda, metric, u })
    }

    pub fn p_dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn g_dim(&self) -> usize {
        self.lambda.g_dim()
    }

    pub fn lambda(&self) -> &LambdaDatum {
        &self.lambda
    }

    pub fn metric(&self) -> &SymmetricForm {
        &self.metric
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn u_star(&self) -> Matrix {
        self.metric.inverse().unwrap().gram().mul(&self.u.transpose())
    }

    pub fn groupoid(&self) -> MetrizedLinearGroupoid {
        from_lambda(&self.lambda)
    }

    pub fn action(&self, q_elt: &[Scalar], x: &[Scalar]) -> Result<Vector> {
        let n = self.g_dim();
        if q_elt.len() != 2 * n || x.len() != self.p_dim() {
            return Err(Error::DimMismatch("module action operands".into()));
        }
        if q_elt[..n] != self.u.apply(x)[..] {
            return Err(Error::NotComposable("s(q) != u(x)".into()));
        }
        Ok(add(x, &self.u_star().apply(&q_elt[n..])))
    }

    /// Composable pairs `((u x, α), x)` parametrized by `(x, α)`; returns `(ξ, x)` for each basis vector.
    fn composable_basis(&self) -> Vec<(Vector, Vector)> {
        let (p, n) = (self.p_dim(), self.g_dim());
        (0..p + n)
            .map(|i| {
                let v = crate::linalg::scalar::unit(p + n, i);
                let x = v[..p].to_vec();
                (concat(&self.u.apply(&x), &v[p..]), x)
            })
            .collect()
    }

    /// Moment law, metric compatibility and associativity, on bases.
    pub fn law_report(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let q = self.groupoid();
        let t_g = q.base().t_g();
        let basis = self.composable_basis();
        let acted: Vec<Vector> = basis.iter().map(|(xi, x)| self.action(xi, x).unwrap()).collect();
        let moment = (0..basis.len()).find(|&i| self.u.apply(&acted[i]) != t_g.apply(&basis[i].0));
        r.push(Check::from_witness("moment_law", moment.map(|i| crate::check::witness(vec![i], "composable basis pair"))).with_count(basis.len()));
        let mut compat = None;
        'outer: for a in 0..basis.len() {
            for b in a..basis.len() {
                let lhs = self.metric.eval(&acted[a], &acted[b]);
                let rhs = q.metric().eval(&basis[a].0, &basis[b].0) + self.metric.eval(&basis[a].1, &basis[b].1);
                if lhs != rhs {
                    compat = Some(crate::check::witness(vec![a, b], "composable basis pairs"));
                    break 'outer;
                }
            }
        }
        r.push(Check::from_witness("metric_compatibility", compat).with_count(basis.len() * (basis.len() + 1) / 2));
        // (ξ∘η)∘x = ξ∘(η∘x): parametrize by (x, α_η, α_ξ).
        let (p, n) = (self.p_dim(), self.g_dim());
        let mut assoc = None;
        for i in 0..p + 2 * n {
            let v = crate::linalg::scalar::unit(p + 2 * n, i);
            let (x, a_eta, a_xi) = (&v[..p], &v[p..p + n], &v[p + n..]);
            let eta = concat(&self.u.apply(x), a_eta);
            let xi = concat(&t_g.apply(&eta), a_xi);
            let left = self.action(&q.base().multiply(&xi, &eta).unwrap(), x).unwrap();
            let right = self.action(&xi, &self.action(&eta, x).unwrap()).unwrap();
            if left != right {
                assoc = Some(crate::check::witness(vec![i], "composable triple basis"));
                break;
            }
        }
        r.push(Check::from_witness("action_associativity", assoc).with_count(p + 2 * n));
        r
    }

    /// The same module seen as a general linear module with `j = u*`.
    pub fn as_linear_module(&self) -> LinearModule {
        LinearModule::new(self.groupoid().base().clone(), self.u.clone(), self.u_star()).expect("u u* = t on ker s")
    }
}

pub fn module_action(m: &MetrizedModule, q_elt: &[Scalar], x: &[Scalar]) -> Result<Vector> {
    m.action(q_elt, x)
}

/// A module of a linear groupoid given by `u: p -> g` and `j: ker(s) -> p` with `u∘j = t|ker(s)`.
/// `u` is in unit coordinates, `j` in coordinates of the canonical basis of `ker(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearModule {
    gpd: LinearGroupoid,
    u: Matrix,
    j: Matrix,
}

impl LinearModule {
    pub fn new(gpd: LinearGroupoid, u: Matrix, j: Matrix) -> Result<Self> {
        let ks = gpd.ker_s();
        if u.rows() != gpd.g_dim() || j.cols() != ks.dim() || j.rows() != u.cols() {
            return Err(Error::DimMismatch("u or j has the wrong shape".into()));
        }
        if u.mul(&j) != gpd.t_g().mul(&ks.inclusion()) {
            return Err(Error::IncompatibleJ);
        }
        Ok(LinearModule { gpd, u, j })
    }

    pub fn groupoid(&self) -> &LinearGroupoid {
        &self.gpd
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn p_dim(&self) -> usize {
        self.u.cols()
    }

    /// `v ↦ j((1−s)v)`, as a map `q -> p`.
    pub fn core_map(&self) -> Matrix {
        let id = Matrix::identity(self.gpd.q_dim());
        let ks = self.gpd.ker_s();
        self.j.mul(&id.sub(self.gpd.s()).select_rows(ks.pivots()))
    }

    pub fn action(&self, xi: &[Scalar], x: &[Scalar]) -> Result<Vector> {
        if xi.len() != self.gpd.q_dim() || x.len() != self.p_dim() {
            return Err(Error::DimMismatch("module action operands".into()));
        }
        if self.gpd.s_g().apply(xi) != self.u.apply(x) {
            return Err(Error::NotComposable("s(xi) != u(x)".into()));
        }
        Ok(add(x, &self.core_map().apply(xi)))
    }

    /// Dual module of `q*` on `p*`.
    pub fn dual(&self) -> DualModule {
        DualModule { gpd: dual_groupoid(&self.gpd), moment: self.core_map().transpose(), shift: self.u.transpose().mul(self.gpd.units().basis()) }
    }

    /// Random decomposition `x = v∘y` driven by an element of `ker(s)`.
    pub fn decompose(&self, x: &[Scalar], core: &[Scalar]) -> (Vector, Vector) {
        let ks = self.gpd.ker_s();
        let w = ks.inclusion().apply(core);
        let y = sub(x, &self.j.apply(core));
        let v = add(&self.gpd.units().inclusion().apply(&self.u.apply(&y)), &w);
        (v, y)
    }
}

pub fn general_module_action(j: &Matrix, u: &Matrix, gpd: &LinearGroupoid, xi: &[Scalar], x: &[Scalar]) -> Result<Vector> {
    LinearModule::new(gpd.clone(), u.clone(), j.clone())?.action(xi, x)
}

/// `q*` acting on `p*`: moment `u_{P*}(η) = η∘j∘(1−s)`, action `α∘η = η + uᵀ(α|_g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualModule {
    pub gpd: LinearGroupoid,
    /// `p* -> q*`.
    pub moment: Matrix,
    /// `q* -> p*`.
    pub shift: Matrix,
}

impl DualModule {
    pub fn is_composable(&self, alpha: &[Scalar], eta: &[Scalar]) -> bool {
        self.gpd.s().apply(alpha) == self.moment.apply(eta)
    }

    pub fn action(&self, alpha: &[Scalar], eta: &[Scalar]) -> Result<Vector> {
        if !self.is_composable(alpha, eta) {
            return Err(Error::NotComposable("dual source != dual moment".into()));
        }
        Ok(add(eta, &self.shift.apply(alpha)))
    }

    /// Basis of composable `(α, η)`.
    pub fn composable_pairs(&self) -> Vec<Vector> {
        self.gpd.s().hstack(&self.moment.neg()).kernel()
    }
}

/// `⟨α∘η, v∘y⟩ = ⟨α,v⟩ + ⟨η,y⟩` and the dual moment law, on bases of composable pairs.
pub fn dual_module_pairing_identity(m: &LinearModule) -> bool {
    let d = m.dual();
    let q = m.gpd.q_dim();
    let prim: Vec<Vector> = m.gpd.s_g().hstack(&m.u.neg()).kernel();
    d.composable_pairs().iter().all(|ae| {
        let (alpha, eta) = (&ae[..q], &ae[q..]);
        let act = d.action(alpha, eta).unwrap();
        let moment_ok = d.moment.apply(&act) == d.gpd.t().apply(alpha);
        moment_ok
            && prim.iter().all(|vy| {
                let (v, y) = (&vy[..q], &vy[q..]);
                dot(&act, &m.action(v, y).unwrap()) == dot(alpha, v) + dot(eta, y)
            })
    })
}

/// Evaluates `⟨α∘η, x⟩` against `⟨α,v⟩ + ⟨η,y⟩` for random composable `(α, η)`, random `x`,
/// and `samples` random decompositions `x = v∘y`.
pub fn dual_module_decomposition_check<R: Rng>(m: &LinearModule, rng: &mut R, samples: usize) -> bool {
    let d = m.dual();
    let q = m.gpd.q_dim();
    let pairs = d.composable_pairs();
    let ae = sample::combination(rng, &pairs, q + m.p_dim());
    let (alpha, eta) = (&ae[..q], &ae[q..]);
    let act = d.action(alpha, eta).unwrap();
    let x = sample::vector(rng, m.p_dim(), 3);
    let expected = dot(&act, &x);
    let k = m.gpd.ker_s().dim();
    (0..samples).all(|_| {
        let core = sample::vector(rng, k, 5);
        let (v, y) = m.decompose(&x, &core);
        m.action(&v, &y).ok().as_deref() == Some(&x[..]) && dot(alpha, &v) + dot(eta, &y) == expected
    })
}

/// `α·x̄ = x̄ + u*(α) mod l` on `p/l`.
pub fn quotient_group_action(m: &MetrizedModule, l: &Subspace, alpha: &[Scalar], xbar: &[Scalar]) -> Result<Vector> {
    let q = QuotientSpace::new(Subspace::full(m.p_dim()), l.clone())?;
    if alpha.len() != m.g_dim() || xbar.len() != q.dim() {
        return Err(Error::DimMismatch("quotient action operands".into()));
    }
    Ok(q.project(&add(&q.lift(xbar), &m.u_star().apply(alpha))))
}

/// Whether `g*` acts transitively on `p/l`.
pub fn is_transitive(m: &MetrizedModule, l: &Subspace) -> bool {
    let q = QuotientSpace::new(Subspace::full(m.p_dim()), l.clone()).unwrap();
    q.projection().mul(&m.u_star()).rank() == q.dim()
}

/// Whether `u|_l` is injective.
pub fn is_injective_on(m: &MetrizedModule, l: &Subspace) -> bool {
    m.u().mul(&l.inclusion()).rank() == l.dim()
}

/// A metrized module with a Lagrangian `l` on which `u` is injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearHomSpace {
    pub module: MetrizedModule,
    pub l: Subspace,
}

impl LinearHomSpace {
    pub fn new(module: MetrizedModule, l: Subspace) -> Result<Self> {
        if l.ambient_dim() != module.p_dim() {
            return Err(Error::DimMismatch("l not in p".into()));
        }
        if !module.metric().is_lagrangian(&l) {
            return Err(Error::InvalidModule("l is not Lagrangian".into()));
        }
        if !is_injective_on(&module, &l) {
            return Err(Error::InvalidModule("u is not injective on l".into()));
        }
        let image = l.image(module.u())?;
        if !module.lambda().is_coisotropic(&image)? {
            return Err(Error::NotLambdaCoisotropic);
        }
        Ok(LinearHomSpace { module, l })
    }
}

/// `(s⁻¹(l)/s⁻¹(l)⊥, l)` with the quotient used to build it.
#[derive(Debug, Clone)]
pub struct HomNormalForm {
    pub space: LinearHomSpace,
    /// `C = s⁻¹(l)` in `q`.
    pub c: Subspace,
    pub quotient: QuotientSpace,
}

pub fn homspace_from_coisotropic(d: &LambdaDatum, l: &Subspace) -> Result<HomNormalForm> {
    let n = d.g_dim();
    if l.ambient_dim() != n {
        return Err(Error::DimMismatch("l not in g".into()));
    }
    if !d.is_coisotropic(l)? {
        return Err(Error::NotLambdaCoisotropic);
    }
    let q = from_lambda(d);
    let c = l.direct_sum(&Subspace::full(n));
    let (quot, induced) = coisotropic_reduce(&c, q.metric())?;
    let expected_perp: Vec<Vector> = l
        .annihilator()
        .basis_vectors()
        .iter()
        .map(|a| concat(&neg_vec(&d.sharp().apply(a)), a))
        .collect();
    debug_assert_eq!(*quot.kernel(), Subspace::span(2 * n, &expected_perp));
    let u = q.base().t_g().mul(quot.section());
    let module = MetrizedModule::new(d.clone(), induced, u)?;
    let lp: Vec<Vector> = l.basis_vectors().iter().map(|b| quot.project(&concat(b, &zeros(n)))).collect();
    let lsub = Subspace::span(quot.dim(), &lp);
    let space = LinearHomSpace::new(module, lsub)?;
    Ok(HomNormalForm { space, c, quotient: quot })
}

pub fn homspace_to_coisotropic(hs: &LinearHomSpace) -> Subspace {
    hs.l.image(hs.module.u()).unwrap()
}

/// The map `(u(x), α) ↦ x + u*(α)` from `C = s⁻¹(u(l))` onto `p`, and its descent to `C/C⊥`.
#[derive(Debug, Clone)]
pub struct PprimIsometry {
    pub normal_form: HomNormalForm,
    /// Basis of `C` used for `map`, as columns.
    pub c_basis: Matrix,
    /// `p × dim C`.
    pub map: Matrix,
    /// From normal-form coordinates to `p`.
    pub descended: Matrix,
    pub surjective: bool,
    pub isometric: bool,
    pub kernel_is_c_perp: bool,
    pub descended_is_isomorphism: bool,
}

impl PprimIsometry {
    pub fn verified(&self) -> bool {
        self.surjective && self.isometric && self.kernel_is_c_perp && self.descended_is_isomorphism
    }
}

pub fn pprim_isometry(hs: &LinearHomSpace) -> Result<PprimIsometry> {
    let m = &hs.module;
    let n = m.g_dim();
    let l0 = homspace_to_coisotropic(hs);
    let nf = homspace_from_coisotropic(m.lambda(), &l0)?;
    let q = m.groupoid();
    let ul = m.u().mul(&hs.l.inclusion());
    let mut cols = Vec::new();
    let mut images = Vec::new();
    for b in l0.basis_vectors() {
        let c = ul.solve(&b).expect("b in u(l)");
        cols.push(concat(&b, &zeros(n)));
        images.push(hs.l.inclusion().apply(&c));
    }
    let ustar = m.u_star();
    for j in 0..n {
        cols.push(concat(&zeros(n), &crate::linalg::scalar::unit(n, j)));
        images.push(ustar.col(j));
    }
    let c_basis = Matrix::from_columns(&cols, 2 * n)?;
    let map = Matrix::from_columns(&images, m.p_dim())?;
    let surjective = map.rank() == m.p_dim();
    let isometric = m.metric().pull_back(&map) == q.metric().pull_back(&c_basis);
    let kernel: Vec<Vector> = map.kernel().iter().map(|k| c_basis.apply(k)).collect();
    let c_perp = q.metric().orth_complement(&nf.c)?;
    let kernel_is_c_perp = Subspace::span(2 * n, &kernel) == c_perp;
    let coords = c_basis.solve_matrix(nf.quotient.section()).expect("section lies in C");
    let descended = map.mul(&coords);
    let nfm = &nf.space.module;
    let descended_is_isomorphism = descended.is_square()
        && descended.rank() == m.p_dim()
        && m.metric().pull_back(&descended) == *nfm.metric()
        && nf.space.l.image(&descended)? == hs.l
        && m.u().mul(&descended) == *nfm.u();
    Ok(PprimIsometry { normal_form: nf, c_basis, map, descended, surjective, isometric, kernel_is_c_perp, descended_is_isomorphism })
}

/// Whether the given maps of `g` preserve `l`.
pub fn is_stable_under(l: &Subspace, maps: &[Matrix]) -> bool {
    maps.iter().all(|m| l.image(m).map(|i| i == *l).unwrap_or(false))
}

pub(crate) fn neg_vec(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x.clone()).collect()
}
