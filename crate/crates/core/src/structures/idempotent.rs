use crate::algebroid::{algebroid_bracket, check_cohomology, CohomologyReport, Residual, TangentAlgebroid};
use crate::calculus::{fn_bracket, nijenhuis_torsion, rn_bracket, DerivationDeg1, VectorField, VectorValuedForm};
use crate::error::{Error, Result};

/// An endomorphism `N` with `N² = N` whose image is involutive, together
/// with the involutivity certificate `(Id − N)[N∂_a, N∂_b]` for `a < b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdempotentData {
    n: VectorValuedForm,
    certificate: Vec<Residual<VectorField>>,
}

impl IdempotentData {
    pub fn endomorphism(&self) -> &VectorValuedForm {
        &self.n
    }

    pub fn certificate(&self) -> &[Residual<VectorField>] {
        &self.certificate
    }
}

fn basis_images(n: &VectorValuedForm) -> Result<Vec<VectorField>> {
    let chart = n.chart();
    (0..chart.dim()).map(|a| n.apply(&VectorField::basis(chart, a))).collect()
}

pub(crate) fn labels(chart: &crate::calculus::Chart, items: &[usize]) -> Vec<String> {
    items.iter().map(|&a| chart.basis_label(a)).collect()
}

/// Validates `N² = N` and the involutivity of `im N`.
///
/// `im N` is spanned over functions by the `N∂_a`, and
/// `[f N∂_a, g N∂_b] = fg [N∂_a, N∂_b]` modulo multiples of `N∂_a` and `N∂_b`,
/// so the basis images decide involutivity. A field `v` lies in `im N`
/// exactly when `(Id − N)v = 0`.
pub fn idempotent_data(n: &VectorValuedForm) -> Result<IdempotentData> {
    if !n.compose(n)?.sub(n)?.is_zero() {
        return Err(Error::NotIdempotent);
    }
    let chart = n.chart();
    let complement = VectorValuedForm::identity(chart).sub(n)?;
    let images = basis_images(n)?;
    let mut certificate = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let r = complement.apply(&images[a].lie_bracket(&images[b])?)?;
            if !r.is_zero() {
                return Err(Error::ImageNotInvolutive { pair: (a, b), residual: r });
            }
            certificate.push(Residual::new("image involutive", labels(chart, &[a, b]), r));
        }
    }
    Ok(IdempotentData { n: n.clone(), certificate })
}

/// The algebroid with anchor `N` and bracket `[X, Y]_N + T_N(X, Y)`, with the
/// identities it comes with.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdempotentAlgebroid {
    pub data: IdempotentData,
    pub algebroid: TangentAlgebroid,
    pub torsion: VectorValuedForm,
    /// `N∘T_N − T_N`.
    pub torsion_in_image: VectorValuedForm,
    /// `[[∂_a, ∂_b]] − [N∂_a, N∂_b] − (Id − N)([N∂_a, ∂_b] + [∂_a, N∂_b])`.
    pub bracket_forms: Vec<Residual<VectorField>>,
}

pub fn idempotent_algebroid(n: &VectorValuedForm) -> Result<IdempotentAlgebroid> {
    let data = idempotent_data(n)?;
    let chart = n.chart();
    let torsion = nijenhuis_torsion(n)?;
    let torsion_in_image = n.compose(&torsion)?.sub(&torsion)?;
    let algebroid = TangentAlgebroid::new(n.clone(), torsion.neg())?;
    let complement = VectorValuedForm::identity(chart).sub(n)?;
    let images = basis_images(n)?;
    let mut bracket_forms = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let (x, y) = (VectorField::basis(chart, a), VectorField::basis(chart, b));
            let mixed = images[a].lie_bracket(&y)?.add(&x.lie_bracket(&images[b])?)?;
            let full = images[a].lie_bracket(&images[b])?.add(&complement.apply(&mixed)?)?;
            let r = algebroid_bracket(&algebroid, &x, &y)?.sub(&full)?;
            bracket_forms.push(Residual::new("bracket, projector form", labels(chart, &[a, b]), r));
        }
    }
    Ok(IdempotentAlgebroid { data, algebroid, torsion, torsion_in_image, bracket_forms })
}

/// `D₁ = 𝓛_N − ι_{T_N}` and `D₂ = −ι_{T_N}`, both cohomology operators,
/// with the identities behind `D₂² = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdempotentOperators {
    pub d1: DerivationDeg1,
    pub d2: DerivationDeg1,
    pub d1_report: CohomologyReport,
    pub d2_report: CohomologyReport,
    /// `[N, −T_N]_FN`.
    pub fn_bracket_residual: VectorValuedForm,
    /// `[T_N, T_N]_RN`.
    pub rn_bracket_residual: VectorValuedForm,
    /// `T_N(T_N(∂_a, ∂_b), ∂_c)` for `a < b` and every `c`.
    pub torsion_of_torsion: Vec<Residual<VectorField>>,
}

pub fn idempotent_tensorial_operator(n: &VectorValuedForm) -> Result<IdempotentOperators> {
    idempotent_data(n)?;
    let chart = n.chart();
    let torsion = nijenhuis_torsion(n)?;
    let l = torsion.neg();
    let d1 = DerivationDeg1::new(n.clone(), l.clone())?;
    let d2 = DerivationDeg1::new(VectorValuedForm::zero(chart, 1), l.clone())?;
    let mut torsion_of_torsion = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let t_ab = torsion.value_on_basis(&[a, b]);
            for c in 0..chart.dim() {
                let r = torsion.eval(&[t_ab.clone(), VectorField::basis(chart, c)])?;
                torsion_of_torsion.push(Residual::new("T(T(·,·),·)", labels(chart, &[a, b, c]), r));
            }
        }
    }
    Ok(IdempotentOperators {
        d1_report: check_cohomology(&d1)?,
        d2_report: check_cohomology(&d2)?,
        fn_bracket_residual: fn_bracket(n, &l)?,
        rn_bracket_residual: rn_bracket(&torsion, &torsion)?,
        torsion_of_torsion,
        d1,
        d2,
    })
}

/// `𝓛_{Id − N}` for an idempotent `N` with `T_N = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplementOperator {
    pub derivation: DerivationDeg1,
    pub report: CohomologyReport,
    /// `T_{Id − N}`.
    pub complement_torsion: VectorValuedForm,
}

pub fn complement_operator(n: &VectorValuedForm) -> Result<ComplementOperator> {
    if !n.compose(n)?.sub(n)?.is_zero() {
        return Err(Error::NotIdempotent);
    }
    let torsion = nijenhuis_torsion(n)?;
    if !torsion.is_zero() {
        return Err(Error::TorsionNonzero { torsion });
    }
    let chart = n.chart();
    let complement = VectorValuedForm::identity(chart).sub(n)?;
    let derivation = DerivationDeg1::new(complement.clone(), VectorValuedForm::zero(chart, 2))?;
    Ok(ComplementOperator {
        report: check_cohomology(&derivation)?,
        complement_torsion: nijenhuis_torsion(&complement)?,
        derivation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{all_vanish, check_axioms};
    use crate::calculus::Chart;
    use crate::structures::fixtures;

    #[test]
    fn n0_algebroid() {
        let n = fixtures::n0();
        let c = n.chart().clone();
        let built = idempotent_algebroid(&n).unwrap();
        assert_eq!(built.torsion.value_on_basis(&[2, 3]), VectorField::basis(&c, 0));
        assert!(built.torsion_in_image.is_zero());
        assert!(all_vanish(&built.bracket_forms));
        assert_eq!(built.bracket_forms.len(), 6);
        let zw = built.algebroid.bracket(&VectorField::basis(&c, 2), &VectorField::basis(&c, 3)).unwrap();
        assert!(zw.is_zero());
        assert!(check_axioms(&built.algebroid, 1, 0).unwrap().passes());
    }

    #[test]
    fn identity_is_trivial() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let built = idempotent_algebroid(&VectorValuedForm::identity(&c)).unwrap();
        assert_eq!(built.algebroid, TangentAlgebroid::trivial(&c));
    }

    #[test]
    fn non_involutive_image_rejected() {
        let n = fixtures::non_involutive();
        match idempotent_algebroid(&n) {
            Err(Error::ImageNotInvolutive { pair, residual }) => {
                assert_eq!(pair, (0, 1));
                assert_eq!(residual, VectorField::basis(n.chart(), 2));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn non_idempotent_rejected() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let k = VectorValuedForm::identity(&c).scale(&c.int(2));
        assert_eq!(idempotent_data(&k), Err(Error::NotIdempotent));
    }

    #[test]
    fn n0_operators() {
        let ops = idempotent_tensorial_operator(&fixtures::n0()).unwrap();
        assert!(ops.d1_report.passes() && ops.d1_report.consistent());
        assert!(ops.d2_report.passes() && ops.d2_report.consistent());
        assert!(ops.fn_bracket_residual.is_zero());
        assert!(ops.rn_bracket_residual.is_zero());
        assert!(all_vanish(&ops.torsion_of_torsion));
    }

    #[test]
    fn identity_gives_zero_operator() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let ops = idempotent_tensorial_operator(&VectorValuedForm::identity(&c)).unwrap();
        assert!(ops.d2.k.is_zero() && ops.d2.l.is_zero());
    }

    #[test]
    fn complements() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let zero = complement_operator(&VectorValuedForm::zero(&c, 1)).unwrap();
        assert_eq!(zero.derivation, TangentAlgebroid::trivial(&c).derivation());
        let half = c.parse("1/2").unwrap();
        let n = VectorValuedForm::identity(&c).add(&fixtures::p0()).unwrap().scale(&half);
        let op = complement_operator(&n).unwrap();
        assert!(op.report.passes() && op.complement_torsion.is_zero());
        assert!(matches!(complement_operator(&fixtures::n0()), Err(Error::TorsionNonzero { .. })));
    }
}
