use rand::SeedableRng;
use serde_json::json;

use super::report::Report;
use super::workspace::{parse, raw_matrix, raw_subspace, to_matrix, to_subspace, to_vectors, FiniteWorkspace, TripleWorkspace};
use crate::check::Check;
use crate::diracgroup::{build_quadratic_triple, check_coisotropic, compare_fibers, equivalent_fiber_via_q, hom_fiber_reduced, search_coisotropic, HomFiber};
use crate::error::{Error, Result};
use crate::finitemodel::{assemble_from_classifying_data, dual_pairing_check, quotient_action_transitivity, FiniteAlmostDirac, FiniteGroup, GroupRep, Subgroup};
use crate::lie::{validate_triple, DiracManinTriple};
use crate::lingroupoid::LambdaDatum;
use crate::linalg::SymmetricForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    ViaQ,
    ViaDbeta,
    Both,
}

fn valid_triple(ws: &TripleWorkspace) -> Result<DiracManinTriple> {
    let t = ws.triple_unchecked()?;
    let r = validate_triple(&t);
    if !r.passed() {
        return Err(Error::InvalidTriple(r.summary()));
    }
    Ok(t)
}

fn fiber_dump(f: &HomFiber) -> serde_json::Value {
    json!({
        "p_dim": f.p_dim(),
        "k_dim": f.k_dim,
        "target": f.target,
        "metric": raw_matrix(f.metric.gram()),
        "signature": f.signature(),
        "l": raw_subspace(&f.l),
        "moment": raw_matrix(&f.moment),
    })
}

pub fn cmd_validate(text: &str) -> Result<Report> {
    let ws: TripleWorkspace = parse(text)?;
    let t = ws.triple_unchecked()?;
    let mut rep = Report::new("validate", text);
    rep.extend("", validate_triple(&t));
    rep.object("dim", t.dim());
    rep.object("g", raw_subspace(&t.g));
    rep.object("h", raw_subspace(&t.h));
    Ok(rep)
}

pub fn cmd_build_q(text: &str) -> Result<Report> {
    let ws: TripleWorkspace = parse(text)?;
    let t = valid_triple(&ws)?;
    let qt = build_quadratic_triple(&t)?;
    let mut rep = Report::new("build-q", text);
    rep.extend("", qt.report.clone());
    rep.object("q_dim", qt.q_dim());
    rep.object("gamma", raw_matrix(qt.gamma().gram()));
    rep.object("f", raw_matrix(&qt.f));
    rep.object("r", raw_subspace(&qt.r));
    rep.object("g_in_q", raw_subspace(qt.g_in_q()));
    rep.object("lambda", raw_matrix(qt.lambda.sharp()));
    Ok(rep)
}

pub fn cmd_homspace(text: &str, c_name: &str, route: Route) -> Result<Report> {
    let ws: TripleWorkspace = parse(text)?;
    let t = valid_triple(&ws)?;
    let c = ws.subspace(c_name)?;
    let mut rep = Report::new("homspace", text);
    rep.object("c", raw_subspace(&c));
    let cd = match check_coisotropic(&t, &c) {
        Ok(cd) => cd,
        Err(r) => {
            rep.extend("coisotropic", r);
            return Ok(rep);
        }
    };
    rep.push(Check::pass("coisotropic"));
    rep.object("k", raw_subspace(&cd.k));
    let fail = |rep: &mut Report, name: &str, e: Error| rep.push(Check::fail(name, vec![], e.to_string()));
    if route != Route::ViaQ {
        match hom_fiber_reduced(&t, &cd) {
            Ok(f) => {
                rep.object("via_dbeta", fiber_dump(&f));
                rep.extend("via_dbeta", f.report);
            }
            Err(e) => fail(&mut rep, "via_dbeta", e),
        }
    }
    if route != Route::ViaDbeta {
        let qt = build_quadratic_triple(&t)?;
        match equivalent_fiber_via_q(&qt, &cd) {
            Ok(f) => {
                rep.object("via_q", fiber_dump(&f));
                rep.extend("via_q", f.report);
            }
            Err(e) => fail(&mut rep, "via_q", e),
        }
        if route == Route::Both {
            match compare_fibers(&qt, &cd) {
                Ok(cmp) => {
                    rep.object("isometry", raw_matrix(&cmp.isometry));
                    rep.extend("comparison", cmp.report);
                }
                Err(e) => fail(&mut rep, "comparison", e),
            }
        }
    }
    Ok(rep)
}

pub fn cmd_search(text: &str, k_name: &str, candidates_name: &str, max_subset_size: Option<usize>) -> Result<Report> {
    let ws: TripleWorkspace = parse(text)?;
    let t = valid_triple(&ws)?;
    let k = ws.subspace(k_name)?;
    let candidates = to_vectors(ws.subspace_vectors(candidates_name)?);
    if candidates.len() >= 32 {
        return Err(Error::Input(format!("{} candidates; at most 31 are supported", candidates.len())));
    }
    let found = search_coisotropic(&t, &k, &candidates, max_subset_size)?;
    let mut rep = Report::new("search", text);
    let mut entries = Vec::new();
    let mut fibers_ok = true;
    for cd in &found {
        let f = hom_fiber_reduced(&t, cd)?;
        fibers_ok &= f.report.passed();
        entries.push(json!({
            "c": raw_subspace(&cd.c),
            "dim": cd.c.dim(),
            "space_dim": t.dim() - cd.c.dim(),
            "fiber_dim": f.p_dim(),
            "lagrangian": t.beta().is_sharp_lagrangian(&cd.c)?,
        }));
    }
    rep.push(Check::pass("search").with_count(found.len()));
    rep.push(if fibers_ok { Check::pass("fibers_valid") } else { Check::fail("fibers_valid", vec![], "a found c has an invalid fiber") });
    rep.object("k", raw_subspace(&k));
    rep.object("found", entries);
    Ok(rep)
}

pub fn cmd_finite_check(text: &str) -> Result<Report> {
    let ws: FiniteWorkspace = parse(text)?;
    let group = FiniteGroup::new(ws.group.table.clone())?;
    let lambda = to_matrix(&ws.fiber.lambda)?;
    let n = lambda.rows();
    let mut mats = Vec::new();
    for (i, m) in ws.rep.matrices.iter().enumerate() {
        let m = to_matrix(m)?;
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::DimMismatch(format!("rep matrix {i} is not {0}x{0}", 2 * n)));
        }
        mats.push(m);
    }
    let mut rep = Report::new("finite-check", text);
    rep.object("group_order", group.order());
    rep.object("q_dim", 2 * n);
    rep.push(GroupRep::check(&group, &mats));
    if !rep.passed {
        return Ok(rep);
    }
    let lambda = LambdaDatum::new(SymmetricForm::new(lambda)?);
    let fa = match FiniteAlmostDirac::new(lambda, group.clone(), GroupRep::new(&group, mats)?) {
        Ok(fa) => fa,
        Err(e) => {
            rep.push(Check::fail("bullet_automorphism", vec![], e.to_string()));
            return Ok(rep);
        }
    };
    rep.push(Check::pass("bullet_automorphism"));
    rep.extend("groupoid", fa.axiom_report());
    if let Some(l) = &ws.fiber.l {
        let k = match &ws.fiber.subgroup {
            Some(ks) => Subgroup::new(&group, ks)?,
            None => Subgroup::trivial(&group),
        };
        let l = to_subspace(n, "l", l)?;
        let bm = assemble_from_classifying_data(&fa, &k, &l)?;
        rep.extend("bundle", bm.action_report());
        let tv = quotient_action_transitivity(&bm);
        rep.push(if tv.agree() {
            Check::pass("transitivity_agreement")
        } else {
            Check::fail("transitivity_agreement", vec![], format!("{tv:?}"))
        });
        let mut rng = rand::rngs::StdRng::seed_from_u64(0);
        let dv = dual_pairing_check(&bm, &mut rng, 50);
        rep.push(if dv.passed() { Check::pass("dual_pairing") } else { Check::fail("dual_pairing", vec![], format!("{dv:?}")) }.with_count(dv.group_pairs));
        rep.object("p_dim", bm.module().p_dim());
        rep.object("coset_reps", bm.coset_reps());
        rep.object("transitive", tv.transitive());
        rep.object("l", raw_subspace(bm.l()));
        rep.object("u", raw_matrix(bm.module().u()));
        rep.object("p_metric", raw_matrix(bm.module().metric().gram()));
    }
    Ok(rep)
}
