//! A metrized module of q: moment map u: p → g with u u* = λ#, and its action.

use dirac_core::linalg::scalar::{format_vector, format_vectors, vector};
use dirac_core::linalg::{int, Matrix, Subspace, SymmetricForm};
use dirac_core::lingroupoid::{is_injective_on, is_transitive, LambdaDatum, MetrizedModule};

fn main() {
    let lam = |x: i64| LambdaDatum::new(SymmetricForm::new(Matrix::from_rows(&[vec![int(x)]]).unwrap()).unwrap());
    let split = SymmetricForm::hyperbolic(1);

    // λ = 2 on g = Q, p = Q² split, u = (1, 1): u* = (1, 1)ᵀ and u u* = 2
    let m = MetrizedModule::new(lam(2), split.clone(), Matrix::from_i64(&[&[1, 1]])).unwrap();
    println!("u* = {:?}", m.u_star());
    println!("laws: {}", m.law_report().summary());
    let x = vector(&[3, -1]);
    let xi = vector(&[2, 5]); // s(ξ) = 2 = u(x)
    println!("(ζ, α) ∘ x = {}", format_vector(&m.action(&xi, &x).unwrap()));
    println!("u = (1, 0) rejected for λ = 2: {}", MetrizedModule::new(lam(2), split.clone(), Matrix::from_i64(&[&[1, 0]])).is_err());

    // λ = 0, u = (1, 0): the two coordinate lines are Lagrangian, only one is moved by u
    let m0 = MetrizedModule::new(lam(0), split, Matrix::from_i64(&[&[1, 0]])).unwrap();
    for l in [Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[1])] {
        println!("l = {}: u|_l injective {}, transitive {}", format_vectors(&l.basis_vectors()), is_injective_on(&m0, &l), is_transitive(&m0, &l));
    }
}
