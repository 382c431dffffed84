//! Dual groupoid q* ⇒ ann(g) and the dual module p* of a module.

use dirac_core::linalg::scalar::format_vectors;
use dirac_core::linalg::{int, Matrix, SymmetricForm};
use dirac_core::lingroupoid::{
    dual_groupoid, dual_module_decomposition_check, dual_module_pairing_identity, dual_pairing_identity, from_lambda, LambdaDatum, MetrizedModule,
};
use dirac_core::sample;

fn main() {
    let lambda = LambdaDatum::new(SymmetricForm::new(Matrix::from_rows(&[vec![int(1), int(0)], vec![int(0), int(3)]]).unwrap()).unwrap());
    let q = from_lambda(&lambda);
    let d = dual_groupoid(q.base());
    println!("q* units: {}", format_vectors(&d.units().basis_vectors()));
    println!("q* axioms: {}", d.axiom_report().summary());
    println!("<α∘β, ξ∘η> = <α,ξ> + <β,η>: {}", dual_pairing_identity(q.base(), &d));

    // p = q itself with u = t
    let m = MetrizedModule::new(lambda, q.metric().clone(), q.base().t_g()).unwrap();
    let lm = m.as_linear_module();
    let dm = lm.dual();
    println!("dual module composable pairs: {}", dm.composable_pairs().len());
    println!("<α∘η, v∘y> = <α,v> + <η,y>: {}", dual_module_pairing_identity(&lm));
    let mut rng = sample::rng(7);
    println!("independent of 50 random decompositions: {}", dual_module_decomposition_check(&lm, &mut rng, 50));
}
