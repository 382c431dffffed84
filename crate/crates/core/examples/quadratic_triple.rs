//! The quadratic triple (d × d*, g, q) of a Dirac Manin triple and the λ it induces on g.

use dirac_core::diracgroup::build_quadratic_triple;
use dirac_core::lie::{cartan_dirac_sl2, nonabelian2, standard_triple, DiracManinTriple};

fn show(name: &str, t: &DiracManinTriple) {
    let qt = build_quadratic_triple(t).unwrap();
    println!("{name}: dim d = {}, dim q = {}", t.dim(), qt.q_dim());
    println!("  γ = {:?}", qt.gamma().gram());
    println!("  λ = {:?}", qt.lambda.sharp());
    for c in &qt.report.checks {
        println!("  {:<22} {}", c.name, if c.passed { "pass" } else { "FAIL" });
    }
}

fn main() {
    show("standard triple over the 2-dim nonabelian algebra", &standard_triple(&nonabelian2()));
    show("Cartan-Dirac triple of sl2", &cartan_dirac_sl2());
}
