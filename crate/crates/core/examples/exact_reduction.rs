//! Coisotropic reduction over ℚ, and reducing in two stages versus directly.

use dirac_core::linalg::scalar::format_vectors;
use dirac_core::linalg::{coisotropic_reduce, reduction_in_stages, Subspace, SymmetricForm};

fn main() {
    // split form on Q^6 pairing e_i with e_{i+3}
    let form = SymmetricForm::hyperbolic(3);
    let c = Subspace::coordinate(6, &[0, 1, 2, 4, 5]);
    println!("C = {}", format_vectors(&c.basis_vectors()));
    println!("C⊥ = {}", format_vectors(&form.orth_complement(&c).unwrap().basis_vectors()));
    let (quot, reduced) = coisotropic_reduce(&c, &form).unwrap();
    println!("C/C⊥ has dim {} and gram {:?}", quot.dim(), reduced.gram());
    println!("signature {:?}", reduced.signature());

    let d = Subspace::coordinate(6, &[0, 1, 3, 4, 5]);
    let stages = reduction_in_stages(&c, &d, &form).unwrap();
    println!("stages compatible: {}", stages.compatible);
    if let Some(cmp) = stages.comparison {
        println!("two-stage gram {:?}\ndirect gram {:?}\nagree: {}", cmp.two_stage.gram(), cmp.direct.gram(), cmp.agree);
    }
}
