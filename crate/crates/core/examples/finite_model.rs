//! Finite-group models: A = H × q, P = H ×_K p, all axioms checked over every element tuple.

use dirac_core::finitemodel::{assemble_from_classifying_data, dual_pairing_check, fixtures, quotient_action_transitivity, Subgroup};
use dirac_core::linalg::Subspace;
use dirac_core::sample;

fn main() {
    let z2 = fixtures::z2(2);
    println!("Z/2, ρ = −id: {}", z2.axiom_report().summary());

    let fa = fixtures::z4();
    for c in &fa.axiom_report().checks {
        println!("Z/4 {:<22} {} ({} tuples)", c.name, if c.passed { "pass" } else { "FAIL" }, c.count.unwrap_or(0));
    }
    let k = Subgroup::new(fa.group(), &[0, 2]).unwrap();
    let bm = assemble_from_classifying_data(&fa, &k, &Subspace::coordinate(3, &[0, 2])).unwrap();
    println!("P = H ×_K p with dim p = {}, cosets {:?}", bm.module().p_dim(), bm.coset_reps());
    for c in &bm.action_report().checks {
        println!("bundle {:<26} {}", c.name, if c.passed { "pass" } else { "FAIL" });
    }
    println!("transitivity {:?}", quotient_action_transitivity(&bm));
    println!("dual pairing {:?}", dual_pairing_check(&bm, &mut sample::rng(1), 50));

    let swap = fixtures::z2_swap();
    match assemble_from_classifying_data(&swap, &Subgroup::whole(swap.group()), &Subspace::coordinate(2, &[0])) {
        Ok(_) => println!("swapped lines: assembled"),
        Err(e) => println!("swapped lines: {e}"),
    }
}
