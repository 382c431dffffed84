//! Writes workspace files for the Cartan-Dirac triple of sl2 and the Z/4 finite model.
//!
//!     cargo run --example export_workspaces -- <dir>

use std::path::PathBuf;

use dirac_core::cli::workspace::{FiniteWorkspace, TripleWorkspace};
use dirac_core::finitemodel::{fixtures, Subgroup};
use dirac_core::lie::cartan_dirac_sl2;
use dirac_core::linalg::scalar::vector;
use dirac_core::linalg::Subspace;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));

    // basis of d = sl2 ⊕ sl2: (e,h,f) in each copy; h of the triple is 0 ⊕ sl2
    let t = cartan_dirac_sl2();
    let c = Subspace::span(6, &[vector(&[1, 0, 0, 0, 0, 0]), vector(&[0, 0, 0, 0, 0, 1]), vector(&[0, 1, 0, 0, 1, 0])]);
    let k = Subspace::span(6, &[vector(&[0, 0, 0, 0, 0, 1])]);
    let ws = TripleWorkspace::from_triple(&t, &[("c", &c), ("k", &k), ("d", &Subspace::full(6))]);
    std::fs::write(dir.join("cartan_dirac_sl2.json"), ws.to_json()).unwrap();

    let fa = fixtures::z4();
    let kk = Subgroup::new(fa.group(), &[0, 2]).unwrap();
    let l = Subspace::coordinate(3, &[0, 2]);
    std::fs::write(dir.join("z4.json"), FiniteWorkspace::from_model(&fa, Some(&kk), Some(&l)).to_json()).unwrap();
    println!("wrote cartan_dirac_sl2.json and z4.json to {}", dir.display());
}
