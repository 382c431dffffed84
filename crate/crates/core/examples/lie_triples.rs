//! Lie algebras from structure constants, doubles, and Dirac Manin triple validation.

use dirac_core::lie::{drinfeld_double, jacobi_check, killing_form, nonabelian2, sl2, standard_triple, validate_triple, DiracManinTriple, LieAlgebra};
use dirac_core::linalg::scalar::{format_vector, vector};

fn main() {
    let h = nonabelian2();
    println!("[x, y] = {}", format_vector(&h.bracket(&vector(&[1, 0]), &vector(&[0, 1]))));
    println!("Killing form of sl2: {:?}", killing_form(&sl2()).gram());

    let t = standard_triple(&h);
    let r = validate_triple(&t);
    for c in &r.checks {
        println!("  {:<20} {}", c.name, if c.passed { "pass" } else { "FAIL" });
    }

    // Drinfeld double of h with a second bracket on h*; Jacobi decides compatibility
    for (name, hs) in [("abelian", LieAlgebra::abelian(2)), ("[a, b] = a", LieAlgebra::new(2, &[(0, 1, vector(&[1, 0]))]).unwrap())] {
        match drinfeld_double(&h, &hs) {
            Ok(d) => println!("h* {name}: double of dim {} (Jacobi {})", d.dim(), jacobi_check(&d.algebra)),
            Err(e) => println!("h* {name}: {e}"),
        }
    }

    // g = h fails transversality and reports where
    let bad = DiracManinTriple::new_unchecked(t.quad.clone(), t.h.clone(), t.h.clone(), vec![]);
    println!("g = h: {}", validate_triple(&bad).summary());
}
