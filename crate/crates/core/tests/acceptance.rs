//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Expected values are recomputed here from first principles (matrix identities, direct
//! substitution, brute force) rather than read back from the library's own reports.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use dirac_core::diracgroup::{
    build_quadratic_triple, check_coisotropic, hom_fiber_reduced, preimage_coisotropy_both, search_coisotropic, semidirect_subspace,
};
use dirac_core::finitemodel::{
    assemble_from_classifying_data, dual_pairing_check, fixtures, quotient_action_transitivity, FiniteAlmostDirac, FiniteBundleModule,
    FiniteGroup, GroupRep, Subgroup,
};
use dirac_core::lie::{cartan_dirac_sl2, killing_form, nonabelian2, sl2, standard_triple, DiracManinTriple};
use dirac_core::linalg::scalar::{add, concat, dot, unit, vector, zeros};
use dirac_core::linalg::{coisotropic_reduce, int, frac, reduction_in_stages, Matrix, Scalar, Subspace, SymmetricForm, Vector};
use dirac_core::lingroupoid::{
    dual_groupoid, dual_module_decomposition_check, from_lambda, homspace_from_coisotropic, homspace_to_coisotropic, pprim_isometry,
    to_lambda, to_normal_form, LambdaDatum, LinearGroupoid, MetrizedLinearGroupoid, MetrizedModule,
};
use dirac_core::sample;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `β#(ann W) ⊆ W`, straight from the definition.
fn coisotropic_oracle(beta: &Matrix, w: &Subspace) -> bool {
    let n = w.ambient_dim();
    let ann = if w.dim() == 0 { (0..n).map(|i| unit(n, i)).collect() } else { Matrix::from_rows(&w.basis_vectors()).unwrap().kernel() };
    ann.iter().all(|a| w.contains(&beta.apply(a)))
}

fn transport(q: &MetrizedLinearGroupoid, a: &Matrix) -> MetrizedLinearGroupoid {
    let ai = a.inverse().unwrap();
    let base = LinearGroupoid::new(q.base().units().image(a).unwrap(), a.mul(q.base().s()).mul(&ai), a.mul(q.base().t()).mul(&ai)).unwrap();
    MetrizedLinearGroupoid::new(base, q.metric().pull_back(&ai)).unwrap()
}

fn random_lambda<R: Rng>(rng: &mut R, n: usize) -> LambdaDatum {
    LambdaDatum::new(sample::symmetric(rng, n, 3))
}

fn nondegenerate<R: Rng>(rng: &mut R, n: usize) -> SymmetricForm {
    loop {
        let f = sample::symmetric(rng, n, 2);
        if f.is_nondegenerate() {
            return f;
        }
    }
}

/// `p = q ⊕ W` with `u = (t_g, 0)`, in a random basis.
fn random_module<R: Rng>(rng: &mut R, n: usize, w: usize) -> MetrizedModule {
    let d = random_lambda(rng, n);
    let q = from_lambda(&d);
    let metric = q.metric().direct_sum(&nondegenerate(rng, w));
    let u0 = q.base().t_g().hstack(&Matrix::zeros(n, w));
    let b = sample::invertible(rng, 2 * n + w, 2);
    let bi = b.inverse().unwrap();
    MetrizedModule::new(d, metric.pull_back(&bi), u0.mul(&bi)).unwrap()
}

fn composable_module_pairs(m: &MetrizedModule) -> Vec<(Vector, Vector)> {
    let q = m.groupoid();
    let n = m.g_dim();
    q.base().s_g().hstack(&m.u().neg()).kernel().into_iter().map(|v| (v[..2 * n].to_vec(), v[2 * n..].to_vec())).collect()
}

fn criterion_1() -> Outcome {
    let mut rng = sample::rng(101);
    for i in 0..200 {
        let n = 1 + i % 4;
        let d = random_lambda(&mut rng, n);
        let q = from_lambda(&d);
        ensure(to_lambda(&q).unwrap() == d, || format!("instance {i}: to_lambda(from_lambda(d)) != d"))?;
        let m = transport(&q, &sample::invertible(&mut rng, 2 * n, 2));
        let (nf, phi) = to_normal_form(&m).unwrap();
        ensure(nf == from_lambda(&to_lambda(&m).unwrap()), || format!("instance {i}: normal form differs from from_lambda(to_lambda(m))"))?;
        let ok = phi.rank() == 2 * n
            && m.base().s().mul(&phi) == phi.mul(nf.base().s())
            && m.base().t().mul(&phi) == phi.mul(nf.base().t())
            && m.metric().pull_back(&phi) == *nf.metric()
            && nf.base().units().image(&phi).unwrap() == *m.base().units();
        ensure(ok, || format!("instance {i}: canonical identification does not intertwine"))?;
    }
    Ok("200 round trips, 200 identifications".into())
}

fn criterion_2() -> Outcome {
    let mut rng = sample::rng(202);
    let mut pairs = 0;
    for i in 0..200 {
        let (n, w) = (1 + i % 3, i % 3);
        let m = random_module(&mut rng, n, w);
        let g = m.metric().gram();
        let ustar = g.inverse().unwrap().mul(&m.u().transpose());
        ensure(m.u().mul(&ustar) == *m.lambda().sharp(), || format!("instance {i}: u u* != λ#"))?;
        let q = m.groupoid();
        let cp = composable_module_pairs(&m);
        let acted: Vec<Vector> = cp.iter().map(|(xi, x)| m.action(xi, x).unwrap()).collect();
        for ((xi, x), y) in cp.iter().zip(&acted) {
            let expected = add(x, &ustar.apply(&xi[n..]));
            ensure(*y == expected, || format!("instance {i}: action differs from x + u*(α)"))?;
            ensure(m.u().apply(y) == q.base().t_g().apply(xi), || format!("instance {i}: moment law"))?;
        }
        for a in 0..cp.len() {
            for b in 0..cp.len() {
                let lhs = m.metric().eval(&acted[a], &acted[b]);
                let rhs = q.metric().eval(&cp[a].0, &cp[b].0) + m.metric().eval(&cp[a].1, &cp[b].1);
                ensure(lhs == rhs, || format!("instance {i}: metric compatibility"))?;
            }
        }
        pairs += cp.len();
    }
    Ok(format!("200 modules, {pairs} composable basis pairs"))
}

fn criterion_3() -> Outcome {
    let mut rng = sample::rng(303);
    for i in 0..100 {
        let n = 1 + i % 4;
        let d = random_lambda(&mut rng, n);
        let dim = rng.gen_range(0..=n);
        let l = sample::sharp_coisotropic(&mut rng, &SymmetricForm::new(d.sharp().clone()).unwrap(), dim);
        ensure(coisotropic_oracle(d.sharp(), &l), || format!("instance {i}: sampler gave a non-coisotropic l"))?;
        let nf = homspace_from_coisotropic(&d, &l).unwrap();
        let hs = &nf.space;
        let m = &hs.module;
        ensure(m.p_dim() == 2 * l.dim(), || format!("instance {i}: dim p = {} for dim l = {}", m.p_dim(), l.dim()))?;
        ensure(m.metric().orth_complement(&hs.l).unwrap() == hs.l, || format!("instance {i}: l != l⊥"))?;
        let ul = m.u().mul(&hs.l.inclusion());
        ensure(ul.rank() == l.dim() && Subspace::column_space(&ul) == l, || format!("instance {i}: u|_l is not an isomorphism onto l"))?;
        ensure(homspace_to_coisotropic(hs) == l, || format!("instance {i}: l not recovered"))?;
        let pp = pprim_isometry(hs).unwrap();
        let q = from_lambda(&d);
        let c_perp = q.metric().orth_complement(&nf.c).unwrap();
        let kernel: Vec<Vector> = pp.map.kernel().iter().map(|k| pp.c_basis.apply(k)).collect();
        let ok = pp.map.rank() == m.p_dim()
            && m.metric().pull_back(&pp.map) == q.metric().pull_back(&pp.c_basis)
            && Subspace::span(2 * n, &kernel) == c_perp;
        ensure(ok, || format!("instance {i}: C → p is not a surjective isometry with kernel C⊥"))?;
    }
    Ok("100 normal forms".into())
}

/// `p = q`, `u = t`, `l = {(Cα, α)}` with `C = −Λ/2 + S`, which is Lagrangian; `u|_l = Λ/2 + S` may be singular.
fn graph_instance<R: Rng>(rng: &mut R, i: usize, n: usize, fa: &FiniteAlmostDirac, k: &Subgroup) -> FiniteBundleModule {
    let lam = fa.lambda().sharp().clone();
    let s = if i % 8 == 0 { Matrix::zeros(n, n) } else { sample::skew(rng, n, 1) };
    let c = lam.scale(&frac(-1, 2)).add(&s);
    let vs: Vec<Vector> = (0..n).map(|j| concat(&c.col(j), &unit(n, j))).collect();
    let l = Subspace::span(2 * n, &vs);
    let q = fa.q();
    let module = MetrizedModule::new(fa.lambda().clone(), q.metric().clone(), q.base().t_g()).unwrap();
    let k_rep = k.elements().iter().map(|&e| fa.bullet().get(e).clone()).collect();
    FiniteBundleModule::new(fa.clone(), k.clone(), module, l, k_rep).unwrap()
}

fn criterion_4() -> Outcome {
    let mut rng = sample::rng(404);
    let (mut yes, mut no) = (0, 0);
    let group = FiniteGroup::cyclic(2);
    for i in 0..100 {
        let n = 1 + i % 3;
        let sign = if i % 2 == 0 { -1 } else { 1 };
        let rep = GroupRep::new(&group, vec![Matrix::identity(2 * n), Matrix::identity(2 * n).scale(&int(sign))]).unwrap();
        let lam = if i % 8 == 0 { LambdaDatum::new(SymmetricForm::zero(n)) } else { random_lambda(&mut rng, n) };
        let fa = FiniteAlmostDirac::new(lam, group.clone(), rep).unwrap();
        let k = if i % 3 == 0 { Subgroup::whole(&group) } else { Subgroup::trivial(&group) };
        let bm = if i % 4 < 2 {
            graph_instance(&mut rng, i, n, &fa, &k)
        } else {
            let dim = rng.gen_range(0..=n);
            let l = sample::sharp_coisotropic(&mut rng, &SymmetricForm::new(fa.lambda().sharp().clone()).unwrap(), dim);
            assemble_from_classifying_data(&fa, &k, &l).unwrap()
        };
        let v = quotient_action_transitivity(&bm);
        ensure(v.agree(), || format!("instance {i}: {v:?}"))?;
        let ul = bm.module().u().mul(&bm.l().inclusion());
        let injective = ul.rank() == bm.l().dim();
        ensure(v.transitive() == injective, || format!("instance {i}: verdict {} but rank(u|_l) says {injective}", v.transitive()))?;
        if injective {
            yes += 1
        } else {
            no += 1
        }
    }
    ensure(no >= 10 && yes >= 10, || format!("unbalanced sample: {yes} transitive, {no} not"))?;
    Ok(format!("100 instances, {yes} transitive, {no} rank-deficient"))
}

fn criterion_5() -> Outcome {
    let mut rng = sample::rng(505);
    for i in 0..100 {
        let m = 1 + i % 3;
        let sf = sample::split_form(&mut rng, m, i % 2);
        let form = &sf.form;
        let (a, b) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
        let isub = sample::subspace_of(&mut rng, &sf.lagrangian, a);
        let jsub = sample::subspace_of(&mut rng, &sf.lagrangian, b);
        let c = form.orth_complement(&isub).unwrap();
        let d = form.orth_complement(&jsub).unwrap();
        let r = reduction_in_stages(&c, &d, form).unwrap();
        ensure(r.compatible, || format!("instance {i}: C⊥ ⊄ D"))?;
        let cmp = r.comparison.unwrap();
        ensure(cmp.agree, || format!("instance {i}: stages disagree"))?;

        let cd = c.intersection(&d).unwrap();
        let (qc, gc) = coisotropic_reduce(&c, form).unwrap();
        let (q2, g2) = coisotropic_reduce(&qc.project_subspace(&cd).unwrap(), &gc).unwrap();
        let (q3, g3) = coisotropic_reduce(&cd, form).unwrap();
        let cd_perp = form.orth_complement(&cd).unwrap();
        ensure(g2.dim() == g3.dim() && g3.dim() == cd.dim() - cd_perp.dim(), || format!("instance {i}: dimensions"))?;
        let basis = cd.basis_vectors();
        for x in &basis {
            for y in &basis {
                let direct = g3.eval(&q3.project(x), &q3.project(y));
                let staged = g2.eval(&q2.project(&qc.project(x)), &q2.project(&qc.project(y)));
                ensure(direct == form.eval(x, y) && staged == direct, || format!("instance {i}: induced grams differ"))?;
            }
        }
        let through = Matrix::from_columns(&basis.iter().map(|x| q2.project(&qc.project(x))).collect::<Vec<_>>(), g2.dim()).unwrap();
        ensure(through.rank() == g2.dim(), || format!("instance {i}: C∩D does not map onto the two-stage quotient"))?;
        ensure(cmp.two_stage == g2 && cmp.direct == g3, || format!("instance {i}: library grams differ from recomputation"))?;
    }
    Ok("100 pairs".into())
}

/// Projection `d → g` along `h`, in the canonical basis of `g`.
fn pr_g(t: &DiracManinTriple) -> Matrix {
    let cols: Vec<Vector> = t.g.basis_vectors().into_iter().chain(t.h.basis_vectors()).collect();
    let m = Matrix::from_columns(&cols, t.dim()).unwrap().inverse().unwrap();
    m.block(0, 0, t.g.dim(), t.dim())
}

fn check_quadratic(name: &str, t: &DiracManinTriple, expected_lambda: &Matrix) -> Result<(), String> {
    let qt = build_quadratic_triple(t).map_err(|e| format!("{name}: {e}"))?;
    let gamma = qt.gamma();
    ensure(!gamma.gram().determinant().eq(&int(0)), || format!("{name}: γ degenerate"))?;
    ensure(gamma.orth_complement(qt.g_in_q()).unwrap() == *qt.g_in_q(), || format!("{name}: g not Lagrangian in q"))?;
    let fgf = qt.f.mul(&gamma.gram().inverse().unwrap()).mul(&qt.f.transpose());
    ensure(fgf == *t.beta().gram(), || format!("{name}: f(γ) != β"))?;
    let p = pr_g(t);
    let direct = p.mul(t.beta().gram()).mul(&p.transpose());
    ensure(*qt.lambda.sharp() == direct, || format!("{name}: λ via q != pr_g(β)"))?;
    ensure(direct == *expected_lambda, || format!("{name}: pr_g(β) = {direct:?}, expected {expected_lambda:?}"))?;
    Ok(())
}

fn criterion_6() -> Outcome {
    check_quadratic("standard triple", &standard_triple(&nonabelian2()), &Matrix::zeros(2, 2))?;
    // β = (−K⁻¹) ⊕ K⁻¹ and pr_g(x, y) = x along 0 ⊕ g, so λ = −K⁻¹
    let kinv = killing_form(&sl2()).gram().inverse().unwrap();
    check_quadratic("Cartan-Dirac sl2", &cartan_dirac_sl2(), &kinv.neg())?;
    Ok("standard triple and Cartan-Dirac sl2".into())
}

fn in_d(n: usize, v: &[Scalar], offset: usize) -> Vector {
    let mut out = zeros(2 * n);
    for (i, x) in v.iter().enumerate() {
        out[offset + i] = x.clone();
    }
    out
}

fn criterion_7() -> Outcome {
    let t = standard_triple(&nonabelian2());
    let beta = t.beta().gram().clone();
    let lagrangian = |c: &Subspace| SymmetricForm::new(beta.inverse().unwrap()).unwrap().orth_complement(c).unwrap() == *c;
    // h = span(x, y), [x, y] = y; d = h ⊕ h* with coordinates (x, y, ξ, η)
    let k = Subspace::coordinate(2, &[0]);
    let k_d = Subspace::span(4, &[vector(&[1, 0, 0, 0])]);

    // k ⊕ ker ψ with ψ = φ*: h* → k* for the inclusion φ: k → h
    let phi = k.inclusion();
    let ker_psi: Vec<Vector> = phi.transpose().kernel().iter().map(|a| in_d(2, a, 2)).collect();
    let c1 = Subspace::span(4, &k_d.basis_vectors().into_iter().chain(ker_psi).collect::<Vec<_>>());
    ensure(c1 == semidirect_subspace(&k, &k.annihilator()), || "k ⊕ ker ψ != k ⋉ ann(k)".into())?;
    let cd1 = check_coisotropic(&t, &c1).map_err(|r| format!("k ⋉ ann(k): {}", r.summary()))?;
    ensure(lagrangian(&c1) && cd1.k == k_d, || "k ⋉ ann(k) not Lagrangian with c ∩ h = k".into())?;
    let f1 = hom_fiber_reduced(&t, &cd1).unwrap();
    ensure(f1.p_dim() == 2 * k.annihilator().dim(), || format!("k ⋉ ann(k): fiber dim {}", f1.p_dim()))?;
    ensure(f1.metric.orth_complement(&f1.l).unwrap() == f1.l, || "k ⋉ ann(k): l not Lagrangian".into())?;

    let c2 = semidirect_subspace(&k, &Subspace::full(2));
    let cd2 = check_coisotropic(&t, &c2).map_err(|r| format!("k ⋉ h*: {}", r.summary()))?;
    ensure(!lagrangian(&c2) && cd2.k == k_d, || "k ⋉ h*".into())?;
    ensure(hom_fiber_reduced(&t, &cd2).unwrap().p_dim() == 2 * (c2.dim() - k.dim()), || "k ⋉ h*: fiber dim".into())?;

    // k = h with the ideal j = span(y)
    let j = Subspace::coordinate(2, &[1]);
    let c3 = semidirect_subspace(&Subspace::full(2), &j.annihilator());
    let cd3 = check_coisotropic(&t, &c3).map_err(|r| format!("h ⋉ ann(j): {}", r.summary()))?;
    ensure(cd3.k == t.h, || "h ⋉ ann(j): c ∩ h != h".into())?;
    ensure(hom_fiber_reduced(&t, &cd3).unwrap().p_dim() == 2, || "h ⋉ ann(j): fiber dim".into())?;

    // Cartan-Dirac sl2: d = sl2 ⊕ sl2, basis (e, h, f) twice, h of the triple = 0 ⊕ sl2
    let t = cartan_dirac_sl2();
    let c = Subspace::span(6, &[vector(&[1, 0, 0, 0, 0, 0]), vector(&[0, 0, 0, 0, 0, 1]), vector(&[0, 1, 0, 0, 1, 0])]);
    let n_minus = Subspace::span(6, &[vector(&[0, 0, 0, 0, 0, 1])]);
    let cd = check_coisotropic(&t, &c).map_err(|r| format!("sl2: {}", r.summary()))?;
    let metric = SymmetricForm::new(t.beta().gram().inverse().unwrap()).unwrap();
    ensure(c.dim() == 3 && metric.orth_complement(&c).unwrap() == c, || "sl2: c not a 3-dim Lagrangian".into())?;
    ensure(cd.k == n_minus, || "sl2: c ∩ h != 0 ⊕ n₋".into())?;
    let f = hom_fiber_reduced(&t, &cd).unwrap();
    ensure(f.p_dim() == 4 && f.metric.orth_complement(&f.l).unwrap() == f.l, || format!("sl2: fiber dim {}", f.p_dim()))?;
    Ok("standard triple (k⋉ann(k), k⋉h*, h⋉ann(j), k⊕ker ψ) and Cartan-Dirac sl2".into())
}

fn criterion_8() -> Outcome {
    let mut rng = sample::rng(808);
    for i in 0..50 {
        let n = 1 + i % 3;
        let q = transport(&from_lambda(&random_lambda(&mut rng, n)), &sample::invertible(&mut rng, 2 * n, 2));
        let gpd = q.base();
        let dual = dual_groupoid(gpd);
        ensure(dual.axiom_report().passed(), || format!("groupoid {i}: dual fails axioms"))?;
        for p in gpd.composable_pairs() {
            for dp in dual.composable_pairs() {
                let (xi, eta) = (&p[..2 * n], &p[2 * n..]);
                let (al, be) = (&dp[..2 * n], &dp[2 * n..]);
                let lhs = dot(&dual.multiply(al, be).unwrap(), &gpd.multiply(xi, eta).unwrap());
                ensure(lhs == dot(al, xi) + dot(be, eta), || format!("groupoid {i}: dual pairing"))?;
            }
        }
    }
    for i in 0..50 {
        let m = random_module(&mut rng, 1 + i % 3, i % 3);
        let lm = m.as_linear_module();
        let dm = lm.dual();
        let n = m.g_dim();
        for dp in dm.composable_pairs() {
            let (al, eta) = (&dp[..2 * n], &dp[2 * n..]);
            let ae = dm.action(al, eta).unwrap();
            for (v, y) in composable_module_pairs(&m) {
                let vy = lm.action(&v, &y).unwrap();
                ensure(dot(&ae, &vy) == dot(al, &v) + dot(eta, &y), || format!("module {i}: dual module pairing"))?;
            }
        }
        ensure(dual_module_decomposition_check(&lm, &mut rng, 50), || format!("module {i}: decomposition dependence"))?;
    }
    for (name, bm) in finite_bundles() {
        let v = dual_pairing_check(&bm, &mut rng, 50);
        ensure(v.passed(), || format!("{name}: {v:?}"))?;
    }
    Ok("50 dual groupoids, 50 dual modules, Z/2 and Z/4 bundles, 50 re-decompositions each".into())
}

fn finite_bundles() -> Vec<(&'static str, FiniteBundleModule)> {
    let z2 = fixtures::z2(2);
    let b2 = assemble_from_classifying_data(&z2, &Subgroup::trivial(z2.group()), &Subspace::full(2)).unwrap();
    let z4 = fixtures::z4();
    let k = Subgroup::new(z4.group(), &[0, 2]).unwrap();
    let b4 = assemble_from_classifying_data(&z4, &k, &Subspace::coordinate(3, &[0, 2])).unwrap();
    vec![("Z/2", b2), ("Z/4", b4)]
}

fn criterion_9() -> Outcome {
    // Z/2 with ρ(σ) = −id: (h₁,ξ)∘(h₂,η) = (h₁h₂, η ± (1−s)ξ), minus iff h₂ = σ
    let fa = fixtures::z2(2);
    let mut rng = sample::rng(909);
    for h1 in 0..2 {
        for h2 in 0..2 {
            let sign = if h2 == 1 { -1 } else { 1 };
            for _ in 0..10 {
                let eta = sample::vector(&mut rng, 4, 3);
                // λ = 0, so t(η) is the g-part of η
                let t_eta = eta[..2].to_vec();
                let zeta: Vec<Scalar> = t_eta.iter().map(|x| x * int(sign)).collect();
                let alpha = sample::vector(&mut rng, 2, 3);
                let xi = concat(&zeta, &alpha);
                let expected = add(&eta, &concat(&zeros(2), &alpha.iter().map(|a| a * int(sign)).collect::<Vec<_>>()));
                ensure(fa.global_multiply((h1, &xi), (h2, &eta)).unwrap() == (h1 ^ h2, expected), || format!("Z/2 product table at ({h1}, {h2})"))?;
            }
        }
    }
    let mut total = 0;
    for (name, bm) in finite_bundles() {
        let order = bm.parent().group().order();
        let ar = bm.parent().axiom_report();
        let br = bm.action_report();
        for c in ar.checks.iter().chain(&br.checks) {
            ensure(c.passed, || format!("{name}: {} failed {:?}", c.name, c.witness))?;
            total += c.count.unwrap_or(0);
        }
        let count = |r: &dirac_core::check::ValidationReport, n: &str| r.get(n).and_then(|c| c.count);
        ensure(count(&ar, "associativity") == Some(order.pow(3)), || format!("{name}: associativity not exhaustive"))?;
        ensure(count(&ar, "metric_multiplicative") == Some(order.pow(2)), || format!("{name}: multiplicativity not exhaustive"))?;
        ensure(count(&br, "well_defined") == Some(order.pow(2) * bm.k().elements().len()), || format!("{name}: well-definedness not exhaustive"))?;
        ensure(count(&br, "dirac_morphism_bijection") == Some(order.pow(2)), || format!("{name}: bijection not exhaustive"))?;
    }
    Ok(format!("Z/2 and Z/4, {total} element tuples"))
}

fn criterion_10() -> Outcome {
    let mut rng = sample::rng(1010);
    let (mut t, mut f_count) = (0, 0);
    for i in 0..100 {
        let (n1, n2) = (2 + i % 3, 1 + i % 4);
        let f = sample::matrix(&mut rng, n2, n1, 2);
        let beta1 = sample::symmetric(&mut rng, n1, 2);
        let beta2 = beta1.push_forward(&f);
        let dim = rng.gen_range(0..=n2);
        let w2 = if i % 2 == 0 { sample::sharp_coisotropic(&mut rng, &beta2, dim) } else { sample::subspace(&mut rng, n2, dim) };
        let (a, b) = preimage_coisotropy_both(&f, &beta1, &beta2, &w2).unwrap();
        // ann(f⁻¹W₂) = fᵀ ann(W₂), so compare β₁#fᵀα ∈ f⁻¹(W₂) with β₂#α ∈ W₂ for α ∈ ann(W₂)
        let ann = if w2.dim() == 0 { (0..n2).map(|j| unit(n2, j)).collect() } else { Matrix::from_rows(&w2.basis_vectors()).unwrap().kernel() };
        let side1 = ann.iter().all(|al| w2.contains(&f.apply(&beta1.gram().apply(&f.transpose().apply(al)))));
        let side2 = coisotropic_oracle(beta2.gram(), &w2);
        ensure(a == side2 && b == side1 && a == b, || format!("instance {i}: library ({a}, {b}), oracle ({side2}, {side1})"))?;
        if a {
            t += 1
        } else {
            f_count += 1
        }
    }
    ensure(t > 10 && f_count > 10, || format!("unbalanced sample: {t} true, {f_count} false"))?;
    Ok(format!("100 instances, {t} coisotropic, {f_count} not"))
}

/// Independent filter: subalgebra by brackets of basis vectors, coisotropy by definition, `c ∩ h` by dimension count.
fn brute_force(t: &DiracManinTriple, k: &Subspace, cands: &[Vector], max: usize) -> Vec<Vec<Vector>> {
    let n = t.dim();
    let mut out = BTreeSet::new();
    for mask in 0..(1usize << cands.len()) {
        if mask.count_ones() as usize > max {
            continue;
        }
        let mut vs = k.basis_vectors();
        for (i, c) in cands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vs.push(c.clone());
            }
        }
        let c = Subspace::span(n, &vs);
        let b = c.basis_vectors();
        let closed = b.iter().all(|x| b.iter().all(|y| c.contains(&t.algebra().bracket(x, y))));
        let mut hv = t.h.basis_vectors();
        hv.extend(b.iter().cloned());
        let meet_dim = c.dim() + t.h.dim() - Subspace::span(n, &hv).dim();
        if closed && coisotropic_oracle(t.beta().gram(), &c) && meet_dim == k.dim() {
            out.insert(b);
        }
    }
    out.into_iter().collect()
}

fn criterion_11() -> Outcome {
    let t = standard_triple(&nonabelian2());
    let cands: Vec<Vector> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1], [0, 0, 1, -1], [0, 1, 1, 0], [1, 1, 0, 0]]
        .iter()
        .map(|v| vector(v))
        .collect();
    let mut runs = 0;
    let mut found = 0;
    for k in [Subspace::zero(4), Subspace::coordinate(4, &[0]), Subspace::coordinate(4, &[1]), t.h.clone()] {
        for max in [1, 2, cands.len()] {
            let got: Vec<Vec<Vector>> = search_coisotropic(&t, &k, &cands, Some(max)).unwrap().into_iter().map(|cd| cd.c.basis_vectors()).collect();
            let want = brute_force(&t, &k, &cands, max);
            ensure(got == want, || format!("k = {:?}, max {max}: search {} results, brute force {}", k.basis_vectors(), got.len(), want.len()))?;
            runs += 1;
            found += got.len();
        }
    }
    ensure(found > 0, || "nothing found at all".into())?;
    Ok(format!("{runs} searches over 256 subsets each, {found} data in total"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1  lambda classification round trip", criterion_1),
        ("2  module classification", criterion_2),
        ("3  homogeneous normal form", criterion_3),
        ("4  transitivity criterion", criterion_4),
        ("5  reduction in stages", criterion_5),
        ("6  quadratic triple", criterion_6),
        ("7  standard and Cartan-Dirac examples", criterion_7),
        ("8  dual structures", criterion_8),
        ("9  finite-model exhaustiveness", criterion_9),
        ("10 preimage coisotropy", criterion_10),
        ("11 search against brute force", criterion_11),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (name, f) in criteria {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({:.2}s)", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed in {:.1}s", 11 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
