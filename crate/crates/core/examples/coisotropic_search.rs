//! Enumerate coisotropic subalgebras c ⊇ k with c ∩ h = k spanned by candidate vectors.

use dirac_core::diracgroup::search_coisotropic;
use dirac_core::lie::{nonabelian2, standard_triple};
use dirac_core::linalg::scalar::{format_vectors, unit};
use dirac_core::linalg::Subspace;

fn main() {
    let t = standard_triple(&nonabelian2());
    let candidates: Vec<_> = (0..4).map(|i| unit(4, i)).collect();
    for k in [Subspace::zero(4), Subspace::coordinate(4, &[0]), Subspace::coordinate(4, &[1])] {
        let found = search_coisotropic(&t, &k, &candidates, None).unwrap();
        println!("k = {}: {} found", format_vectors(&k.basis_vectors()), found.len());
        for cd in found {
            println!("  dim {} {}", cd.c.dim(), format_vectors(&cd.c.basis_vectors()));
        }
    }
}
