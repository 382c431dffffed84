//! The Cartan-Dirac triple of sl2 and the homogeneous space for c = (n₊ ⊕ 0) + (0 ⊕ n₋) + t_Δ.

use dirac_core::diracgroup::{build_quadratic_triple, check_coisotropic, compare_fibers, hom_fiber_reduced};
use dirac_core::lie::{cartan_dirac_sl2, validate_triple};
use dirac_core::linalg::scalar::{format_vectors, vector};
use dirac_core::linalg::Subspace;

fn main() {
    let t = cartan_dirac_sl2();
    println!("triple: {}", validate_triple(&t).summary());
    // d = sl2 ⊕ sl2 with basis (e, h, f) in each copy
    let c = Subspace::span(6, &[vector(&[1, 0, 0, 0, 0, 0]), vector(&[0, 0, 0, 0, 0, 1]), vector(&[0, 1, 0, 0, 1, 0])]);
    let cd = check_coisotropic(&t, &c).unwrap();
    println!("dim c = {}, Lagrangian {}, c ∩ h = {}", c.dim(), t.beta().is_sharp_lagrangian(&c).unwrap(), format_vectors(&cd.k.basis_vectors()));
    let fiber = hom_fiber_reduced(&t, &cd).unwrap();
    println!("reduced fiber: dim {}, signature {:?}", fiber.p_dim(), fiber.signature());
    println!("  {}", fiber.report.summary());
    let qt = build_quadratic_triple(&t).unwrap();
    let cmp = compare_fibers(&qt, &cd).unwrap();
    println!("via q vs via d×d*_β: {}", cmp.report.summary());
    println!("isometry: {:?}", cmp.isometry);
}
