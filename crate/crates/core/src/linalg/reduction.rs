use super::form::SymmetricForm;
use super::matrix::Matrix;
use super::quotient::QuotientSpace;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// `C/C⊥` with the induced form.
pub fn coisotropic_reduce(c: &Subspace, form: &SymmetricForm) -> Result<(QuotientSpace, SymmetricForm)> {
    let perp = form.orth_complement(c)?;
    if !c.contains_subspace(&perp) {
        return Err(Error::NotCoisotropic);
    }
    reduce(c.clone(), perp, form)
}

/// `I⊥/I` with the induced form.
pub fn isotropic_reduce(i: &Subspace, form: &SymmetricForm) -> Result<(QuotientSpace, SymmetricForm)> {
    let perp = form.orth_complement(i)?;
    if !perp.contains_subspace(i) {
        return Err(Error::NotIsotropic);
    }
    reduce(perp, i.clone(), form)
}

fn reduce(num: Subspace, den: Subspace, form: &SymmetricForm) -> Result<(QuotientSpace, SymmetricForm)> {
    let q = QuotientSpace::new(num, den)?;
    let induced = form.pull_back(q.section());
    Ok((q, induced))
}

/// Outcome of comparing `π(D)/π(D)⊥` inside `C/C⊥` with `(C∩D)/(C∩D)⊥`.
#[derive(Debug, Clone)]
pub struct StagesComparison {
    pub two_stage: SymmetricForm,
    pub direct: SymmetricForm,
    /// Canonical map from the direct quotient to the two-stage one.
    pub map: Matrix,
    pub agree: bool,
}

#[derive(Debug, Clone)]
pub struct ReductionInStages {
    /// Whether `C⊥ ⊆ D`.
    pub compatible: bool,
    pub comparison: Option<StagesComparison>,
}

pub fn reduction_in_stages(c: &Subspace, d: &Subspace, form: &SymmetricForm) -> Result<ReductionInStages> {
    let cperp = form.orth_complement(c)?;
    let dperp = form.orth_complement(d)?;
    if !c.contains_subspace(&cperp) || !d.contains_subspace(&dperp) {
        return Err(Error::NotCoisotropic);
    }
    let compatible = d.contains_subspace(&cperp);
    let cd = c.intersection(d)?;
    debug_assert_eq!(compatible, c.contains_subspace(&dperp));
    debug_assert_eq!(compatible, form.is_coisotropic(&cd));
    if !compatible {
        return Ok(ReductionInStages { compatible, comparison: None });
    }
    let (qc, gc) = coisotropic_reduce(c, form)?;
    let pi_d = qc.project_subspace(&cd)?;
    let (q2, g2) = coisotropic_reduce(&pi_d, &gc)?;
    let (q3, g3) = coisotropic_reduce(&cd, form)?;
    let through = q2.projection().mul(qc.projection());
    let map = through.mul(q3.section());
    let kills_kernel = q3.kernel().basis_vectors().iter().all(|v| through.apply(v).iter().all(num_traits::Zero::is_zero));
    let agree = kills_kernel
        && map.is_square()
        && map.rank() == map.rows()
        && g2.pull_back(&map) == g3;
    Ok(ReductionInStages { compatible, comparison: Some(StagesComparison { two_stage: g2, direct: g3, map, agree }) })
}

/// True iff `C⊥ ⊆ D` and the two reductions agree as metrized spaces.
pub fn reduction_in_stages_check(c: &Subspace, d: &Subspace, form: &SymmetricForm) -> Result<bool> {
    let r = reduction_in_stages(c, d, form)?;
    match r.comparison {
        None => Ok(false),
        Some(cmp) if cmp.agree => Ok(true),
        Some(_) => Err(Error::Inconsistent("reduction in stages mismatch".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::vector;

    #[test]
    fn full_space_reduces_to_itself() {
        let f = SymmetricForm::from_i64(&[&[1, 1], &[1, -1]]);
        let (q, g) = coisotropic_reduce(&Subspace::full(2), &f).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(g, f);
    }

    #[test]
    fn lagrangian_reduces_to_zero() {
        let f = SymmetricForm::hyperbolic(2);
        let l = Subspace::coordinate(4, &[0, 1]);
        assert_eq!(coisotropic_reduce(&l, &f).unwrap().0.dim(), 0);
    }

    #[test]
    fn pairing_example_reduces_to_plane() {
        let f = SymmetricForm::hyperbolic(2);
        let c = Subspace::coordinate(4, &[0, 1, 2]);
        let (q, g) = coisotropic_reduce(&c, &f).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(g.is_nondegenerate());
    }

    #[test]
    fn non_coisotropic_rejected() {
        let f = SymmetricForm::hyperbolic(2);
        assert_eq!(coisotropic_reduce(&Subspace::coordinate(4, &[0]), &f).unwrap_err(), Error::NotCoisotropic);
        assert_eq!(isotropic_reduce(&Subspace::coordinate(4, &[0, 2]), &f).unwrap_err(), Error::NotIsotropic);
    }

    #[test]
    fn isotropic_reduce_examples() {
        let h1 = SymmetricForm::hyperbolic(1);
        assert_eq!(isotropic_reduce(&Subspace::coordinate(2, &[0]), &h1).unwrap().0.dim(), 0);
        let (q, g) = isotropic_reduce(&Subspace::zero(2), &h1).unwrap();
        assert_eq!((q.dim(), g), (2, h1));
        // two hyperbolic planes (e1,f1),(e2,f2) in order e1 f1 e2 f2; kill e1
        let h = SymmetricForm::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let (q, g) = isotropic_reduce(&Subspace::span(4, &[vector(&[1, 0, 0, 0])]), &h).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(g, SymmetricForm::hyperbolic(1));
    }

    #[test]
    fn stages_trivial_cases() {
        let f = SymmetricForm::hyperbolic(2);
        assert!(reduction_in_stages_check(&Subspace::full(4), &Subspace::full(4), &f).unwrap());
        let l = Subspace::coordinate(4, &[0, 1]);
        let r = reduction_in_stages(&l, &Subspace::full(4), &f).unwrap();
        assert!(r.compatible);
        assert_eq!(r.comparison.unwrap().direct.dim(), 0);
        // two transverse Lagrangians are not compatible
        assert!(!reduction_in_stages_check(&l, &Subspace::coordinate(4, &[2, 3]), &f).unwrap());
    }
}
