use super::idempotent::{idempotent_algebroid, labels};
use crate::algebroid::{Residual, TangentAlgebroid};
use crate::calculus::{complexify, contracted_bracket, nijenhuis_torsion, VectorField, VectorValuedForm};
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

fn parameter(k: &VectorValuedForm, eps: &ScalarExpr) -> Result<ScalarExpr> {
    let chart = k.chart();
    if eps.is_zero() || eps.as_constant().is_none() || !eps.is_real() || eps.nvars() != chart.dim() {
        return Err(Error::InvalidParameter("ε must be a nonzero real constant".into()));
    }
    Ok(eps.clone())
}

/// `(½(Id + cK), ½(Id − cK))`.
fn half_shifts(k: &VectorValuedForm, c: &ScalarExpr) -> Result<(VectorValuedForm, VectorValuedForm)> {
    let chart = k.chart();
    let half = chart.parse("1/2")?;
    let id = VectorValuedForm::identity(chart);
    let ck = k.scale(c);
    Ok((id.add(&ck)?.scale(&half), id.sub(&ck)?.scale(&half)))
}

fn projector_identities(
    first: (&str, &VectorValuedForm),
    second: (&str, &VectorValuedForm),
) -> Result<Vec<Residual<VectorValuedForm>>> {
    let (a, p) = first;
    let (b, q) = second;
    let id = VectorValuedForm::identity(p.chart());
    Ok(vec![
        Residual::new(format!("{a}∘{a} − {a}"), vec![], p.compose(p)?.sub(p)?),
        Residual::new(format!("{b}∘{b} − {b}"), vec![], q.compose(q)?.sub(q)?),
        Residual::new(format!("{a} + {b} − Id"), vec![], p.add(q)?.sub(&id)?),
        Residual::new(format!("{a}∘{b}"), vec![], p.compose(q)?),
        Residual::new(format!("{b}∘{a}"), vec![], q.compose(p)?),
    ])
}

/// The eigenprojectors `p± = ½(Id ∓ (i/ε)J)` of an endomorphism with
/// `J² = −ε² Id`, on the complexified chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexProjectors {
    pub plus: VectorValuedForm,
    pub minus: VectorValuedForm,
    /// `(p±)² − p±`, `p⁺ + p⁻ − Id`, `p⁺p⁻` and `p⁻p⁺`.
    pub identities: Vec<Residual<VectorValuedForm>>,
    /// `T_{p⁺} + 𝒯_J/(4ε²)`, where `𝒯_J` is the torsion of `J` extended
    /// complex-linearly.
    pub torsion_relation: VectorValuedForm,
}

pub fn complex_projectors(j: &VectorValuedForm) -> Result<ComplexProjectors> {
    complex_projectors_eps(j, &j.chart().one())
}

pub fn complex_projectors_eps(j: &VectorValuedForm, eps: &ScalarExpr) -> Result<ComplexProjectors> {
    let eps = parameter(j, eps)?;
    let eps2 = &eps * &eps;
    let chart = j.chart();
    if !j.compose(j)?.add(&VectorValuedForm::identity(chart).scale(&eps2))?.is_zero() {
        return Err(Error::NotAlmostComplex);
    }
    let jc = complexify(j);
    let cchart = jc.chart().clone();
    let c = ScalarExpr::imaginary_unit(cchart.dim()).checked_div(&eps)?;
    let (minus, plus) = half_shifts(&jc, &c)?;
    let quarter = (&cchart.int(4) * &eps2).inv()?;
    let torsion_relation = nijenhuis_torsion(&plus)?.add(&nijenhuis_torsion(&jc)?.scale(&quarter))?;
    Ok(ComplexProjectors {
        identities: projector_identities(("p⁺", &plus), ("p⁻", &minus))?,
        plus,
        minus,
        torsion_relation,
    })
}

/// The algebroid on the complexified tangent bundle with anchor `p⁺` and
/// bracket `½([Z, W] − (i/ε)[Z, W]_J)`, for an integrable `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexAlgebroid {
    pub projectors: ComplexProjectors,
    pub algebroid: TangentAlgebroid,
    /// `[[∂_a, ∂_b]] − ½([∂_a, ∂_b] − (i/ε)[∂_a, ∂_b]_J)` and
    /// `[[∂_a, ∂_b]] − [∂_a, ∂_b]_{p⁺}`.
    pub bracket_forms: Vec<Residual<VectorField>>,
    /// `p⁻[p⁺∂_a, p⁺∂_b]`: holomorphic fields form an involutive
    /// distribution.
    pub holomorphic_involutivity: Vec<Residual<VectorField>>,
}

pub fn complex_algebroid(j: &VectorValuedForm) -> Result<ComplexAlgebroid> {
    complex_algebroid_eps(j, &j.chart().one())
}

pub fn complex_algebroid_eps(j: &VectorValuedForm, eps: &ScalarExpr) -> Result<ComplexAlgebroid> {
    let projectors = complex_projectors_eps(j, eps)?;
    let torsion = nijenhuis_torsion(j)?;
    if !torsion.is_zero() {
        return Err(Error::TorsionNonzero { torsion });
    }
    let jc = complexify(j);
    let chart = jc.chart().clone();
    let built = idempotent_algebroid(&projectors.plus)?;
    let algebroid = built.algebroid;
    let half = chart.parse("1/2")?;
    let c = ScalarExpr::imaginary_unit(chart.dim()).checked_div(&eps.clone())?;
    let mut bracket_forms = Vec::new();
    let mut holomorphic_involutivity = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let (z, w) = (VectorField::basis(&chart, a), VectorField::basis(&chart, b));
            let br = algebroid.bracket(&z, &w)?;
            let closed = z.lie_bracket(&w)?.sub(&contracted_bracket(&jc, &z, &w)?.scale(&c))?.scale(&half);
            let args = labels(&chart, &[a, b]);
            bracket_forms.push(Residual::new("bracket, J form", args.clone(), br.sub(&closed)?));
            let deformed = contracted_bracket(&projectors.plus, &z, &w)?;
            bracket_forms.push(Residual::new("bracket, p⁺ form", args.clone(), br.sub(&deformed)?));
            let pz = projectors.plus.apply(&z)?;
            let pw = projectors.plus.apply(&w)?;
            let r = projectors.minus.apply(&pz.lie_bracket(&pw)?)?;
            holomorphic_involutivity.push(Residual::new("p⁻[p⁺·, p⁺·]", args, r));
        }
    }
    Ok(ComplexAlgebroid { projectors, algebroid, bracket_forms, holomorphic_involutivity })
}

/// The algebroid with anchor `p⁻ = ½(Id − P/ε)` and bracket
/// `½([X, Y] − [X, Y]_P/ε)`, for `P² = ε² Id` with `T_P = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductAlgebroid {
    pub plus: VectorValuedForm,
    pub minus: VectorValuedForm,
    /// `(p±)² − p±`, `p⁺ + p⁻ − Id`, `p⁺p⁻` and `p⁻p⁺`.
    pub identities: Vec<Residual<VectorValuedForm>>,
    /// `T_{p±} − T_P/(4ε²)`.
    pub torsion_relations: Vec<Residual<VectorValuedForm>>,
    pub algebroid: TangentAlgebroid,
    /// `[[∂_a, ∂_b]] − ½([∂_a, ∂_b] − [∂_a, ∂_b]_P/ε)`.
    pub bracket_form: Vec<Residual<VectorField>>,
}

/// `p± = ½(Id ± P/ε)` with the torsion relations, without requiring
/// integrability.
pub fn product_projectors_eps(
    p: &VectorValuedForm,
    eps: &ScalarExpr,
) -> Result<(VectorValuedForm, VectorValuedForm, Vec<Residual<VectorValuedForm>>)> {
    let eps = parameter(p, eps)?;
    let eps2 = &eps * &eps;
    let chart = p.chart();
    if !p.compose(p)?.sub(&VectorValuedForm::identity(chart).scale(&eps2))?.is_zero() {
        return Err(Error::NotAlmostProduct);
    }
    let (plus, minus) = half_shifts(p, &eps.inv()?)?;
    let quarter = (&chart.int(4) * &eps2).inv()?;
    let tp = nijenhuis_torsion(p)?.scale(&quarter);
    let relations = vec![
        Residual::new("T_{p⁻} − T_P/(4ε²)", vec![], nijenhuis_torsion(&minus)?.sub(&tp)?),
        Residual::new("T_{p⁺} − T_P/(4ε²)", vec![], nijenhuis_torsion(&plus)?.sub(&tp)?),
    ];
    Ok((plus, minus, relations))
}

pub fn product_algebroid(p: &VectorValuedForm) -> Result<ProductAlgebroid> {
    product_algebroid_eps(p, &p.chart().one())
}

pub fn product_algebroid_eps(p: &VectorValuedForm, eps: &ScalarExpr) -> Result<ProductAlgebroid> {
    let (plus, minus, torsion_relations) = product_projectors_eps(p, eps)?;
    let torsion = nijenhuis_torsion(p)?;
    if !torsion.is_zero() {
        return Err(Error::TorsionNonzero { torsion });
    }
    let chart = p.chart();
    let algebroid = idempotent_algebroid(&minus)?.algebroid;
    let half = chart.parse("1/2")?;
    let inv_eps = eps.inv()?;
    let mut bracket_form = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let (x, y) = (VectorField::basis(chart, a), VectorField::basis(chart, b));
            let closed = x.lie_bracket(&y)?.sub(&contracted_bracket(p, &x, &y)?.scale(&inv_eps))?.scale(&half);
            let r = algebroid.bracket(&x, &y)?.sub(&closed)?;
            bracket_form.push(Residual::new("bracket, P form", labels(chart, &[a, b]), r));
        }
    }
    Ok(ProductAlgebroid {
        identities: projector_identities(("p⁺", &plus), ("p⁻", &minus))?,
        plus,
        minus,
        torsion_relations,
        algebroid,
        bracket_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{all_vanish, check_axioms};
    use crate::structures::fixtures;

    #[test]
    fn j0_projector_image() {
        let pr = complex_projectors(&fixtures::j0()).unwrap();
        let c = pr.plus.chart().clone();
        let expected = VectorField::parse(&c, &["1/2", "-i/2"]).unwrap();
        assert_eq!(pr.plus.apply(&VectorField::basis(&c, 0)).unwrap(), expected);
        assert!(all_vanish(&pr.identities));
        assert!(pr.torsion_relation.is_zero());
        assert!(nijenhuis_torsion(&pr.plus).unwrap().is_zero());
    }

    #[test]
    fn torsion_relation_holds_without_integrability() {
        let j = fixtures::j2();
        let pr = complex_projectors(&j).unwrap();
        assert!(pr.torsion_relation.is_zero());
        let c = pr.plus.chart().clone();
        let t = nijenhuis_torsion(&pr.plus).unwrap().value_on_basis(&[0, 2]);
        assert_eq!(t, VectorField::basis(&c, 0).scale(&c.parse("-1/4").unwrap()));
    }

    #[test]
    fn integrable_structures_give_algebroids() {
        for j in [fixtures::j0(), fixtures::j1()] {
            let built = complex_algebroid(&j).unwrap();
            assert!(built.algebroid.correction().is_zero());
            assert!(all_vanish(&built.bracket_forms));
            assert!(all_vanish(&built.holomorphic_involutivity));
            assert!(check_axioms(&built.algebroid, 1, 0).unwrap().passes());
        }
    }

    #[test]
    fn j2_rejected_with_torsion() {
        match complex_algebroid(&fixtures::j2()) {
            Err(Error::TorsionNonzero { torsion }) => {
                assert_eq!(torsion.value_on_basis(&[0, 2]), VectorField::basis(torsion.chart(), 0));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn scaled_structures() {
        let j = fixtures::j0();
        let eps = j.chart().int(3);
        let j3 = j.scale(&eps);
        assert_eq!(complex_algebroid(&j3), Err(Error::NotAlmostComplex));
        let built = complex_algebroid_eps(&j3, &eps).unwrap();
        assert!(all_vanish(&built.bracket_forms));
        let p = fixtures::p1().scale(&eps);
        let built = product_algebroid_eps(&p, &eps).unwrap();
        assert!(all_vanish(&built.bracket_form) && all_vanish(&built.torsion_relations));
        assert!(matches!(product_algebroid_eps(&p, &j.chart().zero()), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn product_structures() {
        for p in [fixtures::p0(), fixtures::p1()] {
            let built = product_algebroid(&p).unwrap();
            assert!(all_vanish(&built.identities));
            assert!(all_vanish(&built.torsion_relations));
            assert!(all_vanish(&built.bracket_form));
            assert!(check_axioms(&built.algebroid, 1, 0).unwrap().passes());
        }
        let p0 = product_algebroid(&fixtures::p0()).unwrap();
        let c = p0.minus.chart().clone();
        assert!(p0.minus.apply(&VectorField::basis(&c, 0)).unwrap().is_zero());
        assert_eq!(p0.minus.apply(&VectorField::basis(&c, 1)).unwrap(), VectorField::basis(&c, 1));
    }

    #[test]
    fn identity_product_has_zero_anchor() {
        let c = fixtures::p0().chart().clone();
        let built = product_algebroid(&VectorValuedForm::identity(&c)).unwrap();
        assert!(built.algebroid.anchor().is_zero());
        assert!(check_axioms(&built.algebroid, 1, 0).unwrap().passes());
        assert!(matches!(product_algebroid(&fixtures::j0()), Err(Error::NotAlmostProduct)));
    }
}
