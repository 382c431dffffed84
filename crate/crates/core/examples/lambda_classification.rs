//! Metrized linear groupoids are classified by a symmetric λ on the unit space.

use dirac_core::linalg::{int, Matrix, SymmetricForm};
use dirac_core::lingroupoid::{from_lambda, to_lambda, to_normal_form, LambdaDatum, LinearGroupoid, MetrizedLinearGroupoid};

fn main() {
    let lambda = LambdaDatum::new(SymmetricForm::new(Matrix::from_rows(&[vec![int(1), int(2)], vec![int(2), int(-1)]]).unwrap()).unwrap());
    let q = from_lambda(&lambda);
    println!("q = g ⊕ g*, dim {}", q.q_dim());
    println!("s = {:?}\nt = {:?}\nmetric = {:?}", q.base().s(), q.base().t(), q.metric().gram());
    println!("axioms: {}", q.base().axiom_report().summary());
    println!("metric checks: {}", q.validation_report().summary());
    println!("λ recovered: {}", to_lambda(&q).unwrap() == lambda);

    // the same groupoid in a scrambled basis still has λ as its invariant
    let a = Matrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 2, 1, 0], &[1, 0, 0, 1]]);
    let ai = a.inverse().unwrap();
    let base = LinearGroupoid::new(q.base().units().image(&a).unwrap(), a.mul(q.base().s()).mul(&ai), a.mul(q.base().t()).mul(&ai)).unwrap();
    let moved = MetrizedLinearGroupoid::new(base, q.metric().pull_back(&ai)).unwrap();
    let back = to_lambda(&moved).unwrap();
    println!("λ in the canonical basis of the new unit space: {:?}", back.sharp());
    let (nf, phi) = to_normal_form(&moved).unwrap();
    println!("normal form s: {:?}", nf.base().s());
    println!("canonical identification φ = {:?}", phi);
}
