//! Homogeneous spaces of q from λ-coisotropic l ⊆ g, and back.

use dirac_core::linalg::scalar::{format_vectors, vector};
use dirac_core::linalg::{int, Matrix, Subspace, SymmetricForm};
use dirac_core::lingroupoid::{homspace_from_coisotropic, homspace_to_coisotropic, pprim_isometry, LambdaDatum};

fn main() {
    let lambda = LambdaDatum::new(SymmetricForm::new(Matrix::diagonal(&[int(0), int(1), int(-1)])).unwrap());
    // ann(l) = span(ε₂ − ε₃) and λ#(ε₂ − ε₃) = e₂ + e₃ ∈ l
    let l = Subspace::span(3, &[vector(&[1, 0, 0]), vector(&[0, 1, 1])]);
    println!("l λ-coisotropic: {}", lambda.is_coisotropic(&l).unwrap());
    let nf = homspace_from_coisotropic(&lambda, &l).unwrap();
    let hs = &nf.space;
    println!("C = s⁻¹(l) has dim {}; p = C/C⊥ has dim {}", nf.c.dim(), hs.module.p_dim());
    println!("metric on p: {:?}", hs.module.metric().gram());
    println!("u = {:?}", hs.module.u());
    println!("l in p: {}", format_vectors(&hs.l.basis_vectors()));
    println!("recovered l = u(l): {}", homspace_to_coisotropic(hs) == l);

    let pp = pprim_isometry(hs).unwrap();
    println!("C → p: surjective {}, isometric {}, kernel C⊥ {}", pp.surjective, pp.isometric, pp.kernel_is_c_perp);

    let bad = Subspace::coordinate(3, &[1]);
    println!("span(e2) is λ-coisotropic: {}", lambda.is_coisotropic(&bad).unwrap());
}
