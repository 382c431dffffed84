//! From a Dirac Manin triple `(d, g, h)_β` to the quadratic triple `(q, g, r)_γ`, β-coisotropic
//! subalgebras, and homogeneous-space fibers.

use std::collections::BTreeMap;

use crate::check::{witness, Check, ValidationReport};
use crate::error::{Error, Result};
use crate::lie::{bracket_stable, subalgebra_witness, validate_triple, DiracManinTriple};
use crate::linalg::scalar::{concat, zeros, Scalar, Vector};
use crate::linalg::{coisotropic_reduce, isotropic_reduce, Matrix, QuotientSpace, Signature, Subspace, SymmetricForm};
use crate::lingroupoid::{
    from_lambda, homspace_from_coisotropic, pprim_isometry, to_lambda, LambdaDatum, LinearGroupoid, LinearHomSpace,
    MetrizedLinearGroupoid, MetrizedModule,
};

fn ensure_valid(t: &DiracManinTriple) -> Result<()> {
    let r = validate_triple(t);
    if r.passed() { Ok(()) } else { Err(Error::InvalidTriple(r.summary())) }
}

/// `d × d*_β ⇉ d`, i.e. the normal form for `λ := β`.
pub fn d_beta_groupoid(t: &DiracManinTriple) -> Result<MetrizedLinearGroupoid> {
    ensure_valid(t)?;
    Ok(from_lambda(&LambdaDatum::new(t.beta().clone())))
}

/// Projection onto `a` along `b` for `a ⊕ b` the whole space.
pub fn projection_along(a: &Subspace, b: &Subspace) -> Matrix {
    let m = a.inclusion().hstack(&b.inclusion());
    let inv = m.inverse().expect("complementary subspaces");
    let mut d = Matrix::zeros(m.cols(), m.cols());
    d.set_block(0, 0, &Matrix::identity(a.dim()));
    m.mul(&d).mul(&inv)
}

#[derive(Debug, Clone)]
pub struct QuadraticTriple {
    pub triple: DiracManinTriple,
    /// `q ⇉ g` with metric `γ`.
    pub q_groupoid: MetrizedLinearGroupoid,
    /// Descended target `q -> d`.
    pub f: Matrix,
    pub r: Subspace,
    /// `λ` in coordinates of `g`'s canonical basis in `d`, computed through `q`.
    pub lambda: LambdaDatum,
    /// `pr'_g(β)`, computed directly in `d`.
    pub lambda_via_beta: LambdaDatum,
    pub quotient: QuotientSpace,
    pub report: ValidationReport,
}

impl QuadraticTriple {
    pub fn gamma(&self) -> &SymmetricForm {
        self.q_groupoid.metric()
    }

    pub fn g_in_q(&self) -> &Subspace {
        self.q_groupoid.base().units()
    }

    pub fn q_dim(&self) -> usize {
        self.q_groupoid.q_dim()
    }
}

pub fn build_quadratic_triple(t: &DiracManinTriple) -> Result<QuadraticTriple> {
    let dbeta = d_beta_groupoid(t)?;
    let n = t.dim();
    let c = t.g.direct_sum(&Subspace::full(n));
    let (quotient, gamma) = coisotropic_reduce(&c, dbeta.metric()).map_err(|e| Error::InvalidTriple(e.to_string()))?;
    let f = dbeta.base().t_g().mul(quotient.section());
    let gq: Vec<Vector> = t.g.basis_vectors().iter().map(|b| quotient.project(&concat(b, &zeros(n)))).collect();
    let g_in_q = Subspace::span(quotient.dim(), &gq);
    let r = t.h.preimage(&f)?;
    let mut report = ValidationReport::default();
    report.push(bool_check("gamma_nondegenerate", gamma.is_nondegenerate(), "induced metric has a radical"));
    let transverse = g_in_q.dim() + r.dim() == quotient.dim() && g_in_q.is_trivial_intersection(&r);
    report.push(bool_check("q_is_g_plus_r", transverse, "g and r are not complementary in q"));
    if !report.passed() {
        return Err(Error::InvalidTriple(report.summary()));
    }
    let tq = projection_along(&g_in_q, &r);
    let r_perp = gamma.orth_complement(&r)?;
    let sq = projection_along(&g_in_q, &r_perp);
    let base = LinearGroupoid::new(g_in_q.clone(), sq, tq).map_err(|e| Error::InvalidTriple(e.to_string()))?;
    let q_groupoid = MetrizedLinearGroupoid::new(base, gamma.clone()).map_err(|e| Error::InvalidTriple(e.to_string()))?;
    report.push(bool_check("g_lagrangian_in_q", gamma.is_lagrangian(&g_in_q), "g != g⊥ in q"));
    let f_id = t.g.basis_vectors().iter().zip(&gq).all(|(b, v)| f.apply(v) == *b);
    report.push(bool_check("f_identity_on_g", f_id, "f does not restrict to the identity on g"));
    let f_gamma = gamma.inverse().unwrap().push_forward(&f) == *t.beta();
    report.push(bool_check("f_gamma_is_beta", f_gamma, "f(γ) != β"));
    // λ from the groupoid on q, rewritten in g's canonical coordinates.
    let lq = to_lambda(&q_groupoid)?;
    let change: Vec<Vector> = g_in_q.basis_vectors().iter().map(|u| t.g.coords(&f.apply(u)).expect("f(g) = g")).collect();
    let change = Matrix::from_columns(&change, t.g.dim())?;
    let lambda = LambdaDatum::new(lq.lambda.push_forward(&change));
    let lambda_via_beta = LambdaDatum::new(t.beta().push_forward(&t.pr_g()));
    report.push(bool_check("lambda_cross_check", lambda == lambda_via_beta, "pr_g(γ) != pr'_g(β)"));
    Ok(QuadraticTriple { triple: t.clone(), q_groupoid, f, r, lambda, lambda_via_beta, quotient, report })
}

fn bool_check(name: &str, ok: bool, detail: &str) -> Check {
    if ok { Check::pass(name) } else { Check::fail(name, vec![], detail) }
}

/// `c` together with `k = c ∩ h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoisotropicDatum {
    pub c: Subspace,
    pub k: Subspace,
}

pub fn check_coisotropic(t: &DiracManinTriple, c: &Subspace) -> std::result::Result<CoisotropicDatum, ValidationReport> {
    let mut r = ValidationReport::default();
    if c.ambient_dim() != t.dim() {
        r.push(Check::fail("dimensions", vec![], "c is not a subspace of d"));
        return Err(r);
    }
    let a = t.algebra();
    r.push(Check::from_witness(
        "subalgebra",
        subalgebra_witness(a, c).map(|(i, j)| witness(vec![i, j], format!("[c{i}, c{j}] = {:?} leaves c", fmt_vec(&a.bracket(&c.basis_vectors()[i], &c.basis_vectors()[j]))))),
    ));
    let ann = c.annihilator().basis_vectors();
    let bad = ann.iter().position(|alpha| !c.contains(&t.beta().sharp().apply(alpha)));
    r.push(Check::from_witness(
        "beta_coisotropic",
        bad.map(|i| witness(vec![i], format!("beta#({:?}) = {:?} is not in c", fmt_vec(&ann[i]), fmt_vec(&t.beta().sharp().apply(&ann[i]))))),
    ));
    let k = c.intersection(&t.h).unwrap();
    r.push(Check::from_witness(
        "k_invariant",
        bracket_stable(a, &k, c).map(|(i, j)| witness(vec![i, j], "[k, c] leaves c")),
    ));
    let gen = t.k_generators.iter().position(|m| c.image(m).map(|i| i != *c).unwrap_or(true));
    r.push(Check::from_witness("k_generators_preserve_c", gen.map(|i| witness(vec![i], "generator moves c"))));
    if r.passed() { Ok(CoisotropicDatum { c: c.clone(), k }) } else { Err(r) }
}

fn fmt_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Both sides of: `W₂` is β₂-coisotropic iff `f⁻¹(W₂)` is β₁-coisotropic, given `f(β₁) = β₂`.
pub fn preimage_coisotropy_both(f: &Matrix, beta1: &SymmetricForm, beta2: &SymmetricForm, w2: &Subspace) -> Result<(bool, bool)> {
    if f.cols() != beta1.dim() || f.rows() != beta2.dim() || w2.ambient_dim() != beta2.dim() {
        return Err(Error::DimMismatch("f, beta1, beta2, w2 shapes".into()));
    }
    if beta1.push_forward(f) != *beta2 {
        return Err(Error::FormNotPushedForward);
    }
    Ok((beta2.is_sharp_coisotropic(w2)?, beta1.is_sharp_coisotropic(&w2.preimage(f)?)?))
}

pub fn preimage_coisotropy_check(f: &Matrix, beta1: &SymmetricForm, beta2: &SymmetricForm, w2: &Subspace) -> Result<bool> {
    let (a, b) = preimage_coisotropy_both(f, beta1, beta2, w2)?;
    if a != b {
        return Err(Error::Inconsistent("coisotropy of W2 and of its preimage disagree".into()));
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FiberTarget {
    /// Moment map into `d` (trivial `K`).
    D,
    /// Moment map into `g` (after reducing by `k`).
    G,
}

#[derive(Debug, Clone)]
pub struct HomFiber {
    pub quotient: QuotientSpace,
    pub metric: SymmetricForm,
    pub l: Subspace,
    pub moment: Matrix,
    pub target: FiberTarget,
    pub k_dim: usize,
    pub report: ValidationReport,
}

impl HomFiber {
    pub fn p_dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn moment_star(&self) -> Matrix {
        self.metric.inverse().unwrap().gram().mul(&self.moment.transpose())
    }

    pub fn signature(&self) -> Signature {
        self.metric.signature()
    }
}

struct TildeFiber {
    quotient: QuotientSpace,
    metric: SymmetricForm,
    l: Subspace,
    u: Matrix,
}

fn tilde_fiber(t: &DiracManinTriple, c: &Subspace) -> Result<TildeFiber> {
    let n = t.dim();
    let nf = homspace_from_coisotropic(&LambdaDatum::new(t.beta().clone()), c).map_err(|e| match e {
        Error::NotLambdaCoisotropic => Error::NotCoisotropic,
        e => e,
    })?;
    debug_assert_eq!(nf.c, c.direct_sum(&Subspace::full(n)));
    let m = &nf.space.module;
    Ok(TildeFiber { quotient: nf.quotient.clone(), metric: m.metric().clone(), l: nf.space.l.clone(), u: m.u().clone() })
}

/// Fiber `s⁻¹(c)/s⁻¹(c)⊥` of `d × d*_β` for `c ∩ h = 0`.
pub fn hom_fiber(t: &DiracManinTriple, cd: &CoisotropicDatum) -> Result<HomFiber> {
    ensure_valid(t)?;
    if !cd.k.is_zero() {
        return Err(Error::KNotTrivial);
    }
    let n = t.dim();
    let tf = tilde_fiber(t, &cd.c)?;
    let mut report = ValidationReport::default();
    let ustar = tf.metric.inverse().unwrap().gram().mul(&tf.u.transpose());
    report.push(bool_check("moment_moment_star_is_beta", tf.u.mul(&ustar) == *t.beta().sharp(), "ũ ũ* != β#"));
    report.push(bool_check("l_lagrangian", tf.metric.is_lagrangian(&tf.l), "l != l⊥"));
    let incl = cd.c.basis_vectors().iter().all(|b| tf.u.apply(&tf.quotient.project(&concat(b, &zeros(n)))) == *b);
    report.push(bool_check("moment_on_l_is_inclusion", incl, "ũ|_l is not the inclusion of c"));
    report.push(bool_check("dim_p_is_twice_dim_c", tf.metric.dim() == 2 * cd.c.dim(), "dim p != 2 dim c"));
    Ok(HomFiber { quotient: tf.quotient, metric: tf.metric, l: tf.l, moment: tf.u, target: FiberTarget::D, k_dim: 0, report })
}

/// Fiber reduced by `k`: `p_K = k⊥/k` inside the trivial-`K` fiber, with `u = pr_g ∘ ũ`.
pub fn hom_fiber_reduced(t: &DiracManinTriple, cd: &CoisotropicDatum) -> Result<HomFiber> {
    ensure_valid(t)?;
    if !cd.c.contains_subspace(&cd.k) || !t.h.contains_subspace(&cd.k) {
        return Err(Error::KNotContained);
    }
    let n = t.dim();
    let tf = tilde_fiber(t, &cd.c)?;
    let kt: Vec<Vector> = cd.k.basis_vectors().iter().map(|b| tf.quotient.project(&concat(b, &zeros(n)))).collect();
    let ktilde = Subspace::span(tf.metric.dim(), &kt);
    let (q2, metric) = isotropic_reduce(&ktilde, &tf.metric)?;
    let l = q2.project_subspace(&tf.l)?;
    let pr_g = t.pr_g();
    let u = pr_g.mul(&tf.u).mul(q2.section());
    let lambda = t.beta().push_forward(&pr_g);
    let mut report = ValidationReport::default();
    let kills = ktilde.basis_vectors().iter().all(|v| pr_g.mul(&tf.u).apply(v).iter().all(num_traits::Zero::is_zero));
    report.push(bool_check("pr_g_kills_k", kills, "pr_g ũ does not vanish on k"));
    let ustar = metric.inverse().unwrap().gram().mul(&u.transpose());
    report.push(bool_check("moment_moment_star_is_lambda", u.mul(&ustar) == *lambda.sharp(), "u u* != λ#"));
    report.push(bool_check("l_lagrangian", metric.is_lagrangian(&l), "l_K != l_K⊥"));
    let ul = u.mul(&l.inclusion());
    report.push(bool_check("moment_injective_on_l", ul.rank() == l.dim(), "u|_l not injective"));
    let image_ok = Subspace::column_space(&ul) == cd.c.image(&pr_g)?;
    report.push(bool_check("moment_image_is_pr_g_c", image_ok, "u(l_K) != pr_g(c)"));
    report.push(bool_check("dim_p_is_twice_dim_c_mod_k", metric.dim() == 2 * (cd.c.dim() - cd.k.dim()), "dim p_K != 2 dim(c/k)"));
    Ok(HomFiber { quotient: q2, metric, l, moment: u, target: FiberTarget::G, k_dim: cd.k.dim(), report })
}

/// The fiber built inside `q` from `l := pr_g(c)`.
pub fn equivalent_fiber_via_q(qt: &QuadraticTriple, cd: &CoisotropicDatum) -> Result<HomFiber> {
    let l = cd.c.image(&qt.triple.pr_g())?;
    let nf = homspace_from_coisotropic(&qt.lambda, &l)?;
    let m = &nf.space.module;
    let mut report = ValidationReport::default();
    report.push(bool_check("l_lagrangian", m.metric().is_lagrangian(&nf.space.l), "l != l⊥"));
    report.push(bool_check("dim_p_is_twice_dim_l", m.p_dim() == 2 * l.dim(), "dim p != 2 dim l"));
    Ok(HomFiber {
        quotient: nf.quotient.clone(),
        metric: m.metric().clone(),
        l: nf.space.l.clone(),
        moment: m.u().clone(),
        target: FiberTarget::G,
        k_dim: cd.k.dim(),
        report,
    })
}

/// Both fiber constructions and an explicit isometry between them.
#[derive(Debug, Clone)]
pub struct FiberComparison {
    pub via_q: HomFiber,
    pub via_dbeta: HomFiber,
    /// From `via_q` coordinates to `via_dbeta` coordinates.
    pub isometry: Matrix,
    pub report: ValidationReport,
}

pub fn compare_fibers(qt: &QuadraticTriple, cd: &CoisotropicDatum) -> Result<FiberComparison> {
    let via_q = equivalent_fiber_via_q(qt, cd)?;
    let via_dbeta = hom_fiber_reduced(&qt.triple, cd)?;
    let module = MetrizedModule::new(qt.lambda.clone(), via_dbeta.metric.clone(), via_dbeta.moment.clone())?;
    let hs = LinearHomSpace::new(module, via_dbeta.l.clone())?;
    let pp = pprim_isometry(&hs)?;
    let iso = pp.descended.clone();
    let mut report = ValidationReport::default();
    report.push(bool_check("dims_agree", via_q.p_dim() == via_dbeta.p_dim(), "fiber dimensions differ"));
    report.push(bool_check("signatures_agree", via_q.signature() == via_dbeta.signature(), "signatures differ"));
    let ok = pp.verified()
        && via_dbeta.metric.pull_back(&iso) == via_q.metric
        && via_q.l.image(&iso)? == via_dbeta.l
        && via_dbeta.moment.mul(&iso) == via_q.moment;
    report.push(bool_check("explicit_isometry", ok, "no isometry intertwining l and the moment maps"));
    Ok(FiberComparison { via_q, via_dbeta, isometry: iso, report })
}

/// All `span(k ∪ S)` for subsets `S` of `candidates` (size at most `max_subset_size`) that are
/// valid coisotropic data with `c ∩ h = k`; deduplicated and sorted lexicographically by canonical basis.
pub fn search_coisotropic(
    t: &DiracManinTriple,
    k: &Subspace,
    candidates: &[Vector],
    max_subset_size: Option<usize>,
) -> Result<Vec<CoisotropicDatum>> {
    let n = t.dim();
    for (index, v) in candidates.iter().enumerate() {
        if v.len() != n {
            return Err(Error::CandidateDimMismatch { index, expected: n, found: v.len() });
        }
    }
    if k.ambient_dim() != n || !t.h.contains_subspace(k) {
        return Err(Error::KNotContained);
    }
    assert!(candidates.len() < 32, "too many candidates for subset enumeration");
    let max = max_subset_size.unwrap_or(candidates.len());
    let mut found: BTreeMap<Vec<Vector>, CoisotropicDatum> = BTreeMap::new();
    let mut seen = std::collections::HashSet::new();
    for mask in 0u32..(1u32 << candidates.len()) {
        if mask.count_ones() as usize > max {
            continue;
        }
        let mut vs = k.basis_vectors();
        vs.extend((0..candidates.len()).filter(|i| mask & (1 << i) != 0).map(|i| candidates[i].clone()));
        let c = Subspace::span(n, &vs);
        if !seen.insert(c.clone()) {
            continue;
        }
        if let Ok(cd) = check_coisotropic(t, &c) {
            if cd.k == *k {
                found.insert(c.basis_vectors(), cd);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// `k ⊕ a` in `h ⋉ h*` for `k ⊆ h`, `a ⊆ h*` (each given in its own coordinates).
pub fn semidirect_subspace(k: &Subspace, a: &Subspace) -> Subspace {
    k.direct_sum(a)
}
