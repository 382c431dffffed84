//! Homogeneous spaces of the standard triple h ⋉ h*: c = k ⋉ ann(k), k ⋉ h*, k ⋉ ann(j).

use dirac_core::diracgroup::{check_coisotropic, hom_fiber_reduced, semidirect_subspace};
use dirac_core::lie::{nonabelian2, standard_triple};
use dirac_core::linalg::Subspace;

fn main() {
    let t = standard_triple(&nonabelian2());
    // h = span(x, y) with [x, y] = y
    let k = Subspace::coordinate(2, &[0]);
    let y = Subspace::coordinate(2, &[1]);
    let cases = [
        ("span(x) ⋉ ann(x)", semidirect_subspace(&k, &k.annihilator())),
        ("span(x) ⋉ h*", semidirect_subspace(&k, &Subspace::full(2))),
        ("h ⋉ ann(y), y spans an ideal", semidirect_subspace(&Subspace::full(2), &y.annihilator())),
        ("0 ⋉ h*", semidirect_subspace(&Subspace::zero(2), &Subspace::full(2))),
        ("span(y) ⋉ ann(x), not a subalgebra", semidirect_subspace(&y, &k.annihilator())),
    ];
    for (name, c) in cases {
        match check_coisotropic(&t, &c) {
            Ok(cd) => {
                let f = hom_fiber_reduced(&t, &cd).unwrap();
                println!(
                    "{name}: dim c {}, Lagrangian {}, dim c∩h {}, fiber dim {}, checks {}",
                    c.dim(),
                    t.beta().is_sharp_lagrangian(&c).unwrap(),
                    cd.k.dim(),
                    f.p_dim(),
                    f.report.summary()
                );
            }
            Err(r) => println!("{name}: {}", r.summary()),
        }
    }
}
