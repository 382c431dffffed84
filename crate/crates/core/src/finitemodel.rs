//! The global picture over a finite group `H`: `A = H × q`, `E = H × g`, `P = H ×_K p`,
//! checked exhaustively over all group elements.

use rand::Rng;

use crate::check::{witness, Check, ValidationReport, Witness};
use crate::error::{Error, Result};
use crate::linalg::scalar::{add, concat, dot, unit, zeros, Scalar, Vector};
use crate::linalg::{Matrix, QuotientSpace, Subspace};
use crate::lingroupoid::{
    dual_module_decomposition_check, dual_module_pairing_identity, from_lambda, homspace_from_coisotropic,
    is_injective_on, is_transitive, LambdaDatum, MetrizedLinearGroupoid, MetrizedModule,
};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("empty table".into());
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return bad(format!("row {i} is not a row of an order-{n} table"));
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element".into());
        };
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    /// `Z/n` with element `i` standing for the `i`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A subgroup `K`, given by its sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.iter().any(|&x| x >= group.order()) || !e.contains(&group.identity()) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        for &a in &e {
            if !e.contains(&group.inv(a)) || e.iter().any(|&b| !e.contains(&group.mul(a, b))) {
                return Err(Error::InvalidGroup(format!("subgroup not closed at element {a}")));
            }
        }
        Ok(Subgroup { elements: e })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup { elements: vec![group.identity()] }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { elements: (0..group.order()).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(&a)
    }

    pub fn position(&self, a: usize) -> Option<usize> {
        self.elements.iter().position(|&x| x == a)
    }

    /// Smallest element index in `hK`.
    pub fn coset_rep(&self, group: &FiniteGroup, h: usize) -> usize {
        self.elements.iter().map(|&k| group.mul(h, k)).min().unwrap()
    }

    /// `(r, k)` with `h = r k`, `r` the canonical representative.
    pub fn split(&self, group: &FiniteGroup, h: usize) -> (usize, usize) {
        let r = self.coset_rep(group, h);
        (r, group.mul(group.inv(r), h))
    }

    pub fn coset_reps(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut r: Vec<usize> = (0..group.order()).map(|h| self.coset_rep(group, h)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

/// First `(g, h)` with `ρ(gh) != ρ(g)ρ(h)`, over the given elements.
pub fn homomorphism_witness(group: &FiniteGroup, elems: &[usize], rho: &dyn Fn(usize) -> Matrix) -> Option<(usize, usize)> {
    for &a in elems {
        for &b in elems {
            if rho(group.mul(a, b)) != rho(a).mul(&rho(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRep {
    dim: usize,
    matrices: Vec<Matrix>,
}

impl GroupRep {
    pub fn new(group: &FiniteGroup, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRep(format!("{} matrices for a group of order {}", matrices.len(), group.order())));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidRep("matrices must all be square of the same size".into()));
        }
        if !matrices[group.identity()].is_identity() {
            return Err(Error::InvalidRep("identity does not act trivially".into()));
        }
        let all: Vec<usize> = (0..group.order()).collect();
        if let Some((a, b)) = homomorphism_witness(group, &all, &|i| matrices[i].clone()) {
            return Err(Error::InvalidRep(format!("rho({a}*{b}) != rho({a}) rho({b})")));
        }
        Ok(GroupRep { dim, matrices })
    }

    /// Checks a representation and reports the first failing pair instead of erroring.
    pub fn check(group: &FiniteGroup, matrices: &[Matrix]) -> Check {
        let all: Vec<usize> = (0..group.order()).collect();
        let n = group.order();
        let w = if matrices.len() != n {
            Some(witness(vec![], "wrong number of matrices"))
        } else {
            homomorphism_witness(group, &all, &|i| matrices[i].clone()).map(|(a, b)| witness(vec![a, b], "rho(ab) != rho(a) rho(b)"))
        };
        Check::from_witness("rep_homomorphism", w).with_count(n * n)
    }

    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        GroupRep { dim, matrices: vec![Matrix::identity(dim); group.order()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, h: usize) -> &Matrix {
        &self.matrices[h]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }
}

/// `q` in normal form with `H` acting by metric groupoid automorphisms.
#[derive(Debug, Clone)]
pub struct FiniteAlmostDirac {
    lambda: LambdaDatum,
    q: MetrizedLinearGroupoid,
    group: FiniteGroup,
    bullet: GroupRep,
}

impl FiniteAlmostDirac {
    pub fn new(lambda: LambdaDatum, group: FiniteGroup, bullet: GroupRep) -> Result<Self> {
        let q = from_lambda(&lambda);
        if bullet.dim() != q.q_dim() {
            return Err(Error::InvalidRep(format!("bullet acts on Q^{}, q has dim {}", bullet.dim(), q.q_dim())));
        }
        for h in 0..group.order() {
            let r = bullet.get(h);
            if q.metric().pull_back(r) != *q.metric() {
                return Err(Error::InvalidRep(format!("rho({h}) does not preserve the metric")));
            }
            if q.base().units().image(r)? != *q.base().units() {
                return Err(Error::InvalidRep(format!("rho({h}) does not preserve g")));
            }
            if q.base().s().mul(r) != r.mul(q.base().s()) || q.base().t().mul(r) != r.mul(q.base().t()) {
                return Err(Error::InvalidRep(format!("rho({h}) does not intertwine s and t")));
            }
        }
        Ok(FiniteAlmostDirac { lambda, q, group, bullet })
    }

    pub fn lambda(&self) -> &LambdaDatum {
        &self.lambda
    }

    pub fn q(&self) -> &MetrizedLinearGroupoid {
        &self.q
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn bullet(&self) -> &GroupRep {
        &self.bullet
    }

    pub fn g_dim(&self) -> usize {
        self.lambda.g_dim()
    }

    /// `h•` on `g`.
    pub fn on_g(&self, h: usize) -> Matrix {
        let n = self.g_dim();
        self.bullet.get(h).block(0, 0, n, n)
    }

    /// `h•` on `g*`.
    pub fn on_gstar(&self, h: usize) -> Matrix {
        let n = self.g_dim();
        self.bullet.get(h).block(n, n, n, n)
    }

    fn embed_unit(&self, zeta: &[Scalar]) -> Vector {
        concat(zeta, &zeros(self.g_dim()))
    }

    /// `(s(ξ), h•t(ξ))`.
    pub fn global_source_target(&self, h: usize, xi: &[Scalar]) -> (Vector, Vector) {
        let b = self.q.base();
        (b.s_g().apply(xi), self.on_g(h).apply(&b.t_g().apply(xi)))
    }

    /// `(h₁,ξ)∘(h₂,η) = (h₁h₂, η + h₂⁻¹•(1−s)ξ)`.
    pub fn global_multiply(&self, (h1, xi): (usize, &[Scalar]), (h2, eta): (usize, &[Scalar])) -> Result<(usize, Vector)> {
        let b = self.q.base();
        if b.s_g().apply(xi) != self.global_source_target(h2, eta).1 {
            return Err(Error::NotComposable(format!("s(xi) != {h2} • t(eta)")));
        }
        let core = crate::linalg::scalar::sub(xi, &b.s().apply(xi));
        let moved = self.bullet.get(self.group.inv(h2)).apply(&core);
        Ok((self.group.mul(h1, h2), add(eta, &moved)))
    }

    pub fn global_inverse(&self, h: usize, xi: &[Scalar]) -> (usize, Vector) {
        (self.group.inv(h), self.bullet.get(h).apply(&self.q.base().inverse(xi)))
    }

    /// `(h₁,α₁)·(h₂,α₂) = (h₁h₂, α₂ + h₂⁻¹•α₁)` on `A/E = H × g*`.
    pub fn quotient_group_law(&self, (h1, a1): (usize, &[Scalar]), (h2, a2): (usize, &[Scalar])) -> (usize, Vector) {
        (self.group.mul(h1, h2), add(a2, &self.on_gstar(self.group.inv(h2)).apply(a1)))
    }

    /// Composable `(ξ, η)` for `(h₁, h₂)` (independent of `h₁`).
    fn composable_pairs(&self, h2: usize) -> Vec<Vector> {
        let b = self.q.base();
        b.s_g().hstack(&self.on_g(h2).mul(&b.t_g()).neg()).kernel()
    }

    /// Exhaustive groupoid, metric, vacancy and quotient-group checks.
    pub fn axiom_report(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let gr = &self.group;
        let hs: Vec<usize> = (0..gr.order()).collect();
        let m = self.q.q_dim();
        let n = self.g_dim();
        let b = self.q.base();

        let mut w: Option<Witness> = None;
        let mut count = 0;
        'assoc: for &h1 in &hs {
            for &h2 in &hs {
                for &h3 in &hs {
                    count += 1;
                    let mut cons = Matrix::zeros(2 * n, 3 * m);
                    cons.set_block(0, 0, &b.s_g());
                    cons.set_block(0, m, &self.on_g(h2).mul(&b.t_g()).neg());
                    cons.set_block(n, m, &b.s_g());
                    cons.set_block(n, 2 * m, &self.on_g(h3).mul(&b.t_g()).neg());
                    for v in cons.kernel() {
                        let (x1, x2, x3) = (&v[..m], &v[m..2 * m], &v[2 * m..]);
                        let ab = self.global_multiply((h1, x1), (h2, x2)).unwrap();
                        let left = self.global_multiply((ab.0, &ab.1), (h3, x3)).unwrap();
                        let bc = self.global_multiply((h2, x2), (h3, x3)).unwrap();
                        let right = self.global_multiply((h1, x1), (bc.0, &bc.1)).unwrap();
                        if left != right {
                            w = Some(witness(vec![h1, h2, h3], "associativity"));
                            break 'assoc;
                        }
                    }
                }
            }
        }
        r.push(Check::from_witness("associativity", w).with_count(count));

        let mut unit_w = None;
        let mut inv_w = None;
        for &h in &hs {
            for i in 0..m {
                let xi = unit(m, i);
                let (s, t) = self.global_source_target(h, &xi);
                let left = self.global_multiply((gr.identity(), &self.embed_unit(&t)), (h, &xi));
                let right = self.global_multiply((h, &xi), (gr.identity(), &self.embed_unit(&s)));
                if left.ok() != Some((h, xi.clone())) || right.ok() != Some((h, xi.clone())) {
                    unit_w.get_or_insert(witness(vec![h, i], "unit law"));
                }
                let (hi, xinv) = self.global_inverse(h, &xi);
                let a = self.global_multiply((hi, &xinv), (h, &xi));
                let c = self.global_multiply((h, &xi), (hi, &xinv));
                if a.ok() != Some((gr.identity(), self.embed_unit(&s))) || c.ok() != Some((gr.identity(), self.embed_unit(&t))) {
                    inv_w.get_or_insert(witness(vec![h, i], "inverse law"));
                }
            }
        }
        r.push(Check::from_witness("unit_laws", unit_w).with_count(hs.len()));
        r.push(Check::from_witness("inverse_laws", inv_w).with_count(hs.len()));

        let mut st_w = None;
        let mut metric_w = None;
        let mut vac_w = None;
        let g = self.q.metric();
        for &h1 in &hs {
            for &h2 in &hs {
                let pairs = self.composable_pairs(h2);
                let prods: Vec<Vector> = pairs.iter().map(|p| self.global_multiply((h1, &p[..m]), (h2, &p[m..])).unwrap().1).collect();
                for (p, prod) in pairs.iter().zip(&prods) {
                    let (s, _) = self.global_source_target(h2, &p[m..]);
                    let (_, t) = self.global_source_target(h1, &p[..m]);
                    let (s2, t2) = self.global_source_target(gr.mul(h1, h2), prod);
                    if s != s2 || t != t2 {
                        st_w.get_or_insert(witness(vec![h1, h2], "source/target law"));
                    }
                }
                for a in 0..pairs.len() {
                    for c in a..pairs.len() {
                        let lhs = g.eval(&prods[a], &prods[c]);
                        let rhs = g.eval(&pairs[a][..m], &pairs[c][..m]) + g.eval(&pairs[a][m..], &pairs[c][m..]);
                        if lhs != rhs {
                            metric_w.get_or_insert(witness(vec![h1, h2], "metric multiplicativity"));
                        }
                    }
                }
                // E = H × g: (h₁, h₂•ζ)∘(h₂, ζ) = (h₁h₂, ζ)
                for i in 0..n {
                    let zeta = unit(n, i);
                    let z1 = self.embed_unit(&self.on_g(h2).apply(&zeta));
                    let out = self.global_multiply((h1, &z1), (h2, &self.embed_unit(&zeta)));
                    if out.ok() != Some((gr.mul(h1, h2), self.embed_unit(&zeta))) {
                        vac_w.get_or_insert(witness(vec![h1, h2, i], "E is not closed with the vacant product"));
                    }
                }
            }
        }
        let pairs_count = hs.len() * hs.len();
        r.push(Check::from_witness("source_target_laws", st_w).with_count(pairs_count));
        r.push(Check::from_witness("metric_multiplicative", metric_w).with_count(pairs_count));
        r.push(Check::from_witness("e_vacant_product", vac_w).with_count(pairs_count));

        let mut qw = None;
        for &h1 in &hs {
            for &h2 in &hs {
                for &h3 in &hs {
                    for i in 0..3 * n {
                        let v = unit(3 * n, i);
                        let (a1, a2, a3) = (&v[..n], &v[n..2 * n], &v[2 * n..]);
                        let ab = self.quotient_group_law((h1, a1), (h2, a2));
                        let left = self.quotient_group_law((ab.0, &ab.1), (h3, a3));
                        let bc = self.quotient_group_law((h2, a2), (h3, a3));
                        let right = self.quotient_group_law((h1, a1), (bc.0, &bc.1));
                        if left != right {
                            qw.get_or_insert(witness(vec![h1, h2, h3], "quotient group associativity"));
                        }
                    }
                }
            }
            for i in 0..n {
                let a = unit(n, i);
                let e = (gr.identity(), zeros(n));
                let inv = (gr.inv(h1), self.on_gstar(h1).apply(&a).iter().map(|x| -x.clone()).collect::<Vec<_>>());
                if self.quotient_group_law((h1, &a), (e.0, &e.1)) != (h1, a.clone())
                    || self.quotient_group_law((e.0, &e.1), (h1, &a)) != (h1, a.clone())
                    || self.quotient_group_law((h1, &a), (inv.0, &inv.1)) != e
                    || self.quotient_group_law((inv.0, &inv.1), (h1, &a)) != e
                {
                    qw.get_or_insert(witness(vec![h1, i], "quotient group identity/inverse"));
                }
            }
        }
        r.push(Check::from_witness("quotient_group_law", qw).with_count(hs.len().pow(3)));
        r
    }
}

/// `P = H ×_K p`, `L = H ×_K l`, with the `K`-action on `p`.
#[derive(Debug, Clone)]
pub struct FiniteBundleModule {
    parent: FiniteAlmostDirac,
    k: Subgroup,
    module: MetrizedModule,
    l: Subspace,
    /// Indexed like `k.elements()`.
    k_rep: Vec<Matrix>,
}

impl FiniteBundleModule {
    pub fn new(parent: FiniteAlmostDirac, k: Subgroup, module: MetrizedModule, l: Subspace, k_rep: Vec<Matrix>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidModule(m));
        if module.lambda() != parent.lambda() {
            return bad("module lambda differs from the groupoid's".into());
        }
        if l.ambient_dim() != module.p_dim() || k_rep.len() != k.elements().len() {
            return Err(Error::DimMismatch("l or K representation has the wrong size".into()));
        }
        let group = parent.group();
        let rho = |a: usize| k_rep[k.position(a).unwrap()].clone();
        if let Some((a, b)) = homomorphism_witness(group, k.elements(), &rho) {
            return bad(format!("K action fails to be a homomorphism at ({a}, {b})"));
        }
        for (i, &kk) in k.elements().iter().enumerate() {
            let r = &k_rep[i];
            if module.metric().pull_back(r) != *module.metric() {
                return bad(format!("K element {kk} does not preserve the metric on p"));
            }
            if l.image(r)? != l {
                return Err(Error::NotKStable(format!("K element {kk} moves l")));
            }
            if module.u().mul(r) != parent.on_g(kk).mul(module.u()) {
                return bad(format!("u is not equivariant for K element {kk}"));
            }
        }
        Ok(FiniteBundleModule { parent, k, module, l, k_rep })
    }

    pub fn parent(&self) -> &FiniteAlmostDirac {
        &self.parent
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn module(&self) -> &MetrizedModule {
        &self.module
    }

    pub fn l(&self) -> &Subspace {
        &self.l
    }

    pub fn k_action(&self, kk: usize) -> &Matrix {
        &self.k_rep[self.k.position(kk).expect("element of K")]
    }

    pub fn coset_reps(&self) -> Vec<usize> {
        self.k.coset_reps(self.parent.group())
    }

    /// `[h, x]` written at the canonical representative of `hK`.
    pub fn canonical(&self, h: usize, x: &[Scalar]) -> (usize, Vector) {
        let (r, kk) = self.k.split(self.parent.group(), h);
        (r, self.k_action(kk).apply(x))
    }

    /// `u([h, x]) = h•u(x)`.
    pub fn moment(&self, h: usize, x: &[Scalar]) -> Vector {
        self.parent.on_g(h).apply(&self.module.u().apply(x))
    }

    /// `(h₁,(ζ,α))∘[h₂,x] = [h₁h₂, x + u*(h₂⁻¹•α)]`.
    pub fn bundle_action(&self, (h1, xi): (usize, &[Scalar]), (h2, x): (usize, &[Scalar])) -> Result<(usize, Vector)> {
        let n = self.parent.g_dim();
        if xi.len() != 2 * n || x.len() != self.module.p_dim() {
            return Err(Error::DimMismatch("bundle action operands".into()));
        }
        if xi[..n] != self.moment(h2, x)[..] {
            return Err(Error::NotComposable("s(h1, xi) != u([h2, x])".into()));
        }
        let g = self.parent.group();
        let alpha = self.parent.on_gstar(g.inv(h2)).apply(&xi[n..]);
        Ok(self.canonical(g.mul(h1, h2), &add(x, &self.module.u_star().apply(&alpha))))
    }

    /// Composable `((h₂•u(x), α), x)` for the basis of `(x, α)`.
    fn composable_basis(&self, h2: usize) -> Vec<(Vector, Vector)> {
        let (p, n) = (self.module.p_dim(), self.parent.g_dim());
        (0..p + n)
            .map(|i| {
                let v = unit(p + n, i);
                let x = v[..p].to_vec();
                (concat(&self.moment(h2, &x), &v[p..]), x)
            })
            .collect()
    }

    /// Exhaustive action checks over all group elements.
    pub fn action_report(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let g = self.parent.group();
        let hs: Vec<usize> = (0..g.order()).collect();
        let qm = self.parent.q().metric();
        let pm = self.module.metric();

        let mut wd = None;
        let mut count = 0;
        for &h1 in &hs {
            for &h2 in &hs {
                for &kk in self.k.elements() {
                    count += 1;
                    let h2k = g.mul(h2, g.inv(kk));
                    for (xi, x) in self.composable_basis(h2) {
                        let a = self.bundle_action((h1, &xi), (h2, &x)).unwrap();
                        let b = self.bundle_action((h1, &xi), (h2k, &self.k_action(kk).apply(&x)));
                        if b.ok() != Some(a) {
                            wd.get_or_insert(witness(vec![h1, h2, kk], "action depends on the representative"));
                        }
                    }
                }
            }
        }
        r.push(Check::from_witness("well_defined", wd).with_count(count));

        let mut ml = None;
        let mut mc = None;
        let mut bij = None;
        for &h1 in &hs {
            for &h2 in &hs {
                let basis = self.composable_basis(h2);
                let acted: Vec<(usize, Vector)> = basis.iter().map(|(xi, x)| self.bundle_action((h1, xi), (h2, x)).unwrap()).collect();
                for ((xi, _), (rr, y)) in basis.iter().zip(&acted) {
                    if self.moment(*rr, y) != self.parent.global_source_target(h1, xi).1 {
                        ml.get_or_insert(witness(vec![h1, h2], "moment law"));
                    }
                }
                for a in 0..basis.len() {
                    for c in a..basis.len() {
                        if pm.eval(&acted[a].1, &acted[c].1) != qm.eval(&basis[a].0, &basis[c].0) + pm.eval(&basis[a].1, &basis[c].1) {
                            mc.get_or_insert(witness(vec![h1, h2], "metric compatibility"));
                        }
                    }
                }
                // (E × L) over (h₁, h₂K) -> L over h₁h₂K: x ↦ [h₁h₂, x]
                let images: Vec<Vector> = self
                    .l
                    .basis_vectors()
                    .iter()
                    .map(|x| {
                        let zeta = concat(&self.moment(h2, x), &zeros(self.parent.g_dim()));
                        self.bundle_action((h1, &zeta), (h2, x)).unwrap().1
                    })
                    .collect();
                let sp = Subspace::span(self.module.p_dim(), &images);
                if sp != self.l || images.len() != self.l.dim() {
                    bij.get_or_insert(witness(vec![h1, h2], "E x L -> L is not a bijection onto the fiber of L"));
                }
            }
        }
        let c2 = hs.len() * hs.len();
        r.push(Check::from_witness("moment_law", ml).with_count(c2));
        r.push(Check::from_witness("metric_compatibility", mc).with_count(c2));
        r.push(Check::from_witness("dirac_morphism_bijection", bij).with_count(c2));

        let mut assoc = None;
        let (p, n) = (self.module.p_dim(), self.parent.g_dim());
        let b = self.parent.q().base();
        for &h1 in &hs {
            for &h2 in &hs {
                for &h3 in &hs {
                    for i in 0..p + 2 * n {
                        let v = unit(p + 2 * n, i);
                        let (x, a2, a1) = (&v[..p], &v[p..p + n], &v[p + n..]);
                        let xi2 = concat(&self.moment(h3, x), a2);
                        let xi1 = concat(&self.parent.on_g(h2).apply(&b.t_g().apply(&xi2)), a1);
                        let prod = self.parent.global_multiply((h1, &xi1), (h2, &xi2)).unwrap();
                        let left = self.bundle_action((prod.0, &prod.1), (h3, x)).unwrap();
                        let inner = self.bundle_action((h2, &xi2), (h3, x)).unwrap();
                        let right = self.bundle_action((h1, &xi1), (inner.0, &inner.1)).unwrap();
                        if left != right {
                            assoc.get_or_insert(witness(vec![h1, h2, h3], "action associativity"));
                        }
                    }
                }
            }
        }
        r.push(Check::from_witness("action_associativity", assoc).with_count(hs.len().pow(3)));
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TransitivityVerdict {
    pub orbit: bool,
    pub fiber_criterion: bool,
    pub injectivity: bool,
}

impl TransitivityVerdict {
    pub fn agree(&self) -> bool {
        self.orbit == self.fiber_criterion && self.fiber_criterion == self.injectivity
    }

    pub fn transitive(&self) -> bool {
        self.orbit
    }
}

/// Transitivity of `A/E` on `P/L`: orbit of `[e, 0̄]`, the fiber criterion, and injectivity of `u|_l`.
pub fn quotient_action_transitivity(bm: &FiniteBundleModule) -> TransitivityVerdict {
    let g = bm.parent.group();
    let p = bm.module.p_dim();
    let ustar = bm.module.u_star();
    let mut reached: std::collections::BTreeMap<usize, Subspace> = std::collections::BTreeMap::new();
    // (h₁, α)·[e, 0̄] = [h₁, u*(α)]; collect, per coset, the span of reached representatives.
    for h1 in 0..g.order() {
        let mut vs: Vec<Vector> = bm.l.basis_vectors();
        for j in 0..bm.parent.g_dim() {
            let (_, y) = bm.canonical(h1, &ustar.col(j));
            vs.push(y);
        }
        let (rep, _) = bm.k.split(g, h1);
        let s = Subspace::span(p, &vs);
        let e = reached.entry(rep).or_insert_with(|| s.clone());
        if s.dim() > e.dim() {
            *e = s;
        }
    }
    let orbit = bm.coset_reps().iter().all(|r| reached.get(r).map(|s| s.is_full()).unwrap_or(false));
    TransitivityVerdict { orbit, fiber_criterion: is_transitive(&bm.module, &bm.l), injectivity: is_injective_on(&bm.module, &bm.l) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DualPairingVerdict {
    pub pairing_identity: bool,
    pub decomposition_independent: bool,
    pub abstract_route_agrees: bool,
    pub group_pairs: usize,
}

impl DualPairingVerdict {
    pub fn passed(&self) -> bool {
        self.pairing_identity && self.decomposition_independent && self.abstract_route_agrees
    }
}

/// Dual action via the metric identification, checked over all `(h₁, h₂)`, plus random
/// re-decompositions `x = v∘y` and agreement with the abstract dual module on the identity fiber.
pub fn dual_pairing_check<R: Rng>(bm: &FiniteBundleModule, rng: &mut R, samples: usize) -> DualPairingVerdict {
    let g = bm.parent.group();
    let qm = bm.parent.q().metric();
    let pm = bm.module.metric();
    let n = bm.parent.g_dim();
    let mut pairing_identity = true;
    let mut decomposition_independent = true;
    for h1 in 0..g.order() {
        for h2 in 0..g.order() {
            let basis = bm.composable_basis(h2);
            // dual elements α = G_q ξ', η = G_p x' and α∘η = G_p (ξ'∘x')
            let duals: Vec<(Vector, Vector, Vector)> = basis
                .iter()
                .map(|(xi, x)| {
                    let act = bm.bundle_action((h1, xi), (h2, x)).unwrap().1;
                    (qm.gram().apply(xi), pm.gram().apply(x), pm.gram().apply(&act))
                })
                .collect();
            for (alpha, eta, ae) in &duals {
                for (xi, x) in &basis {
                    let act = bm.bundle_action((h1, xi), (h2, x)).unwrap().1;
                    if dot(ae, &act) != dot(alpha, xi) + dot(eta, x) {
                        pairing_identity = false;
                    }
                }
            }
            // random composable dual pair, random target z, random decompositions z = v∘y
            let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| sample::integer(rng, 3)).collect();
            let mix = |f: &dyn Fn(&(Vector, Vector, Vector)) -> &Vector, len: usize| {
                duals.iter().zip(&coeffs).fold(zeros(len), |acc, (d, c)| add(&acc, &crate::linalg::scalar::scale(c, f(d))))
            };
            let alpha = mix(&|d| &d.0, 2 * n);
            let eta = mix(&|d| &d.1, bm.module.p_dim());
            let ae = mix(&|d| &d.2, bm.module.p_dim());
            let z = sample::vector(rng, bm.module.p_dim(), 3);
            let (_, k0) = bm.k.split(g, g.mul(h1, h2));
            let z_pre = bm.k_action(g.inv(k0)).apply(&z);
            for _ in 0..samples {
                let av = sample::vector(rng, n, 4);
                let shift = bm.module.u_star().apply(&bm.parent.on_gstar(g.inv(h2)).apply(&av));
                let y = crate::linalg::scalar::sub(&z_pre, &shift);
                let v = concat(&bm.moment(h2, &y), &av);
                let ok = bm.bundle_action((h1, &v), (h2, &y)).map(|r| r.1 == z).unwrap_or(false)
                    && dot(&ae, &z) == dot(&alpha, &v) + dot(&eta, &y);
                if !ok {
                    decomposition_independent = false;
                }
            }
        }
    }
    let lm = bm.module.as_linear_module();
    let d = lm.dual();
    let e = g.identity();
    let abstract_route_agrees = dual_module_pairing_identity(&lm)
        && dual_module_decomposition_check(&lm, rng, samples)
        && bm.composable_basis(e).iter().all(|(xi, x)| {
            let (alpha, eta) = (qm.gram().apply(xi), pm.gram().apply(x));
            let metric_route = pm.gram().apply(&bm.module.action(xi, x).unwrap());
            d.action(&alpha, &eta).ok() == Some(metric_route)
        });
    DualPairingVerdict { pairing_identity, decomposition_independent, abstract_route_agrees, group_pairs: g.order() * g.order() }
}

/// Normal-form bundle `(H ×_K (s⁻¹(l)/s⁻¹(l)⊥), H ×_K l)` with the `K`-action induced by the bullet.
pub fn assemble_from_classifying_data(parent: &FiniteAlmostDirac, k: &Subgroup, l: &Subspace) -> Result<FiniteBundleModule> {
    if !parent.lambda().is_coisotropic(l)? {
        return Err(Error::NotLambdaCoisotropic);
    }
    for &kk in k.elements() {
        if l.image(&parent.on_g(kk))? != *l {
            return Err(Error::NotKStable(format!("K element {kk} moves l")));
        }
    }
    let nf = homspace_from_coisotropic(parent.lambda(), l)?;
    let c_perp = nf.quotient.kernel().clone();
    let quot: &QuotientSpace = &nf.quotient;
    let mut k_rep = Vec::new();
    for &kk in k.elements() {
        let r = parent.bullet().get(kk);
        if !nf.c.contains_subspace(&nf.c.image(r)?) || !c_perp.contains_subspace(&c_perp.image(r)?) {
            return Err(Error::Inconsistent(format!("K element {kk} does not preserve s⁻¹(l) and its perp")));
        }
        k_rep.push(quot.projection().mul(r).mul(quot.section()));
    }
    FiniteBundleModule::new(parent.clone(), k.clone(), nf.space.module.clone(), nf.space.l.clone(), k_rep)
}

/// Small fixtures.
pub mod fixtures {
    use super::*;
    use crate::linalg::{int, SymmetricForm};

    /// `Z/2` acting by `−id` on `q = g ⊕ g*`, `λ = 0`, `dim g = n`.
    pub fn z2(n: usize) -> FiniteAlmostDirac {
        let g = FiniteGroup::cyclic(2);
        let rep = GroupRep::new(&g, vec![Matrix::identity(2 * n), Matrix::identity(2 * n).neg()]).unwrap();
        FiniteAlmostDirac::new(LambdaDatum::new(SymmetricForm::zero(n)), g, rep).unwrap()
    }

    /// `Z/4` on `g = Q³` by `A = R ⊕ (−1)` with `R` the quarter turn, `λ = diag(0, 0, 1)`, `dim q = 6`.
    pub fn z4() -> FiniteAlmostDirac {
        let g = FiniteGroup::cyclic(4);
        let a = Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, -1]]);
        let mut mats = vec![Matrix::identity(6)];
        for i in 1..4 {
            let prev: &Matrix = &mats[i - 1];
            let step = a.block_diag(&a.inverse().unwrap().transpose());
            mats.push(step.mul(prev));
        }
        let lambda = LambdaDatum::new(SymmetricForm::new(Matrix::diagonal(&[int(0), int(0), int(1)])).unwrap());
        FiniteAlmostDirac::new(lambda, g.clone(), GroupRep::new(&g, mats).unwrap()).unwrap()
    }

    /// `Z/2` swapping the two basis lines of `g = Q²`, `λ = 0`.
    pub fn z2_swap() -> FiniteAlmostDirac {
        let g = FiniteGroup::cyclic(2);
        let s = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let rep = GroupRep::new(&g, vec![Matrix::identity(4), s.block_diag(&s)]).unwrap();
        FiniteAlmostDirac::new(LambdaDatum::new(SymmetricForm::zero(2)), g, rep).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::linalg::scalar::{concat, vector, zeros};

    #[test]
    fn group_validation() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.inv(1), 3);
        assert!(Subgroup::new(&z4, &[0, 2]).is_ok());
        assert!(Subgroup::new(&z4, &[0, 1]).is_err());
        let k = Subgroup::new(&z4, &[0, 2]).unwrap();
        assert_eq!(k.coset_reps(&z4), vec![0, 1]);
        assert_eq!(k.split(&z4, 3), (1, 2));
    }

    #[test]
    fn rep_homomorphism_witness() {
        let g = FiniteGroup::cyclic(2);
        let bad = vec![Matrix::identity(1), Matrix::from_i64(&[&[2]])];
        assert!(GroupRep::new(&g, bad.clone()).is_err());
        let c = GroupRep::check(&g, &bad);
        assert_eq!(c.witness.unwrap().tuple, vec![1, 1]);
    }

    #[test]
    fn source_target_and_vacant_product() {
        let fa = z2(1);
        let xi = vector(&[2, 3]);
        assert_eq!(fa.global_source_target(0, &xi), (vector(&[2]), vector(&[2])));
        assert_eq!(fa.global_source_target(1, &vector(&[2, 0])), (vector(&[2]), vector(&[-2])));
        let p = fa.global_multiply((1, &vector(&[-5, 0])), (1, &vector(&[5, 0]))).unwrap();
        assert_eq!(p, (0, vector(&[5, 0])));
        // h1 = h2 = e is the fiber product
        let q = fa.q().base().multiply(&vector(&[1, 2]), &vector(&[1, 7])).unwrap();
        assert_eq!(fa.global_multiply((0, &vector(&[1, 2])), (0, &vector(&[1, 7]))).unwrap(), (0, q));
    }

    #[test]
    fn z2_quotient_law_squares_to_identity() {
        let fa = z2(2);
        let a = vector(&[1, -3]);
        assert_eq!(fa.quotient_group_law((1, &a), (1, &a)), (0, vector(&[0, 0])));
    }

    #[test]
    fn fixtures_pass_axioms() {
        for fa in [z2(2), z4(), z2_swap()] {
            let r = fa.axiom_report();
            assert!(r.passed(), "{:?}", r.summary());
        }
    }

    #[test]
    fn assemble_trivial_k_full_l() {
        let fa = z2(2);
        let bm = assemble_from_classifying_data(&fa, &Subgroup::trivial(fa.group()), &Subspace::full(2)).unwrap();
        assert_eq!(bm.module().p_dim(), 4);
        assert!(bm.action_report().passed());
        let v = quotient_action_transitivity(&bm);
        assert!(v.agree() && v.transitive());
    }

    #[test]
    fn assemble_rejects_unstable_l() {
        let fa = z2_swap();
        let l = Subspace::coordinate(2, &[0]);
        let e = assemble_from_classifying_data(&fa, &Subgroup::whole(fa.group()), &l).unwrap_err();
        assert!(matches!(e, Error::NotKStable(_)));
        // trivial K: no stability condition
        assert!(assemble_from_classifying_data(&fa, &Subgroup::trivial(fa.group()), &l).is_ok());
        // λ = I: span(e1) is not coisotropic
        let g = FiniteGroup::cyclic(2);
        let rep = GroupRep::trivial(&g, 4);
        let fa1 = FiniteAlmostDirac::new(LambdaDatum::new(crate::linalg::SymmetricForm::new(Matrix::identity(2)).unwrap()), g, rep).unwrap();
        let e = assemble_from_classifying_data(&fa1, &Subgroup::trivial(fa1.group()), &l).unwrap_err();
        assert_eq!(e, Error::NotLambdaCoisotropic);
    }

    #[test]
    fn z4_bundle_with_nontrivial_k() {
        let fa = z4();
        let k = Subgroup::new(fa.group(), &[0, 2]).unwrap();
        let l = Subspace::coordinate(3, &[0, 2]);
        let bm = assemble_from_classifying_data(&fa, &k, &l).unwrap();
        assert_eq!(bm.module().p_dim(), 4);
        let r = bm.action_report();
        assert!(r.passed(), "{}", r.summary());
        let mut rng = crate::sample::rng(3);
        assert!(dual_pairing_check(&bm, &mut rng, 5).passed());
        assert!(quotient_action_transitivity(&bm).agree());
    }

    #[test]
    fn zero_l_is_transitive() {
        let fa = z2(2);
        let bm = assemble_from_classifying_data(&fa, &Subgroup::trivial(fa.group()), &Subspace::zero(2)).unwrap();
        assert_eq!(bm.module().p_dim(), 0);
        let v = quotient_action_transitivity(&bm);
        assert!(v.agree() && v.transitive());
    }

    #[test]
    fn vanishing_moment_on_l_is_not_transitive() {
        // p = q, u = t; with λ = 0 the line g* is Lagrangian and killed by t
        let fa = z2(1);
        let q = fa.q();
        let module = MetrizedModule::new(fa.lambda().clone(), q.metric().clone(), q.base().t_g()).unwrap();
        let l = Subspace::coordinate(2, &[1]);
        let bm = FiniteBundleModule::new(fa.clone(), Subgroup::trivial(fa.group()), module, l, vec![Matrix::identity(2)]).unwrap();
        let v = quotient_action_transitivity(&bm);
        assert!(v.agree() && !v.transitive(), "{v:?}");
        assert!(bm.action_report().passed());
    }

    #[test]
    fn e_acts_by_translation() {
        let fa = z4();
        let k = Subgroup::new(fa.group(), &[0, 2]).unwrap();
        let bm = assemble_from_classifying_data(&fa, &k, &Subspace::coordinate(3, &[0, 2])).unwrap();
        let x = vector(&[1, -2, 3, 5]);
        for h1 in 0..4 {
            for h2 in 0..4 {
                let zeta = concat(&bm.moment(h2, &x), &zeros(3));
                let got = bm.bundle_action((h1, &zeta), (h2, &x)).unwrap();
                assert_eq!(got, bm.canonical(fa.group().mul(h1, h2), &x));
            }
        }
    }

    #[test]
    fn single_coset_when_k_is_everything() {
        let fa = z4();
        let bm = assemble_from_classifying_data(&fa, &Subgroup::whole(fa.group()), &Subspace::full(3)).unwrap();
        assert_eq!(bm.coset_reps(), vec![0]);
        assert_eq!(bm.canonical(3, &vector(&[1, 0, 0, 0, 0, 0])).0, 0);
        assert!(bm.action_report().passed());
        assert!(quotient_action_transitivity(&bm).transitive());
    }

    #[test]
    fn bundle_action_rejects_mismatched_moment() {
        let fa = z2(1);
        let bm = assemble_from_classifying_data(&fa, &Subgroup::trivial(fa.group()), &Subspace::full(1)).unwrap();
        let x = vec![crate::linalg::int(1); bm.module().p_dim()];
        let wrong = concat(&crate::linalg::scalar::add(&bm.moment(0, &x), &vector(&[1])), &vector(&[0]));
        assert!(matches!(bm.bundle_action((0, &wrong), (0, &x)), Err(Error::NotComposable(_))));
    }
}
