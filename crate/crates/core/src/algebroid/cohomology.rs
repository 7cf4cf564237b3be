use super::tangent::TangentAlgebroid;
use crate::calculus::{
    fn_bracket, nijenhuis_torsion, rn_bracket, Chart, DerivationDeg1, FormOperator, KForm, VectorValuedForm,
};
use crate::error::{Error, Result};

/// The two tensor conditions equivalent to `D² = 0` for `D = 𝓛_K + ι_L`,
/// plus `D²` evaluated directly on the generators as a cross-check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyReport {
    /// `½[K, K]_FN + K∘L`, a vector-valued 2-form.
    pub condition1: VectorValuedForm,
    /// `[K, L]_FN + ½[L, L]_RN`, a vector-valued 3-form.
    pub condition2: VectorValuedForm,
    /// Whether `T_K + K∘L` agreed with `condition1`.
    pub torsion_route_agrees: bool,
    /// `D² x^j`.
    pub square_on_functions: Vec<KForm>,
    /// `D² dx^j`.
    pub square_on_differentials: Vec<KForm>,
}

impl CohomologyReport {
    pub fn passes(&self) -> bool {
        self.condition1.is_zero() && self.condition2.is_zero()
    }

    /// True when the direct generator computation agrees with the tensor
    /// conditions about whether `D² = 0`.
    pub fn consistent(&self) -> bool {
        let direct = self.square_on_functions.iter().chain(&self.square_on_differentials).all(KForm::is_zero);
        self.torsion_route_agrees && direct == self.passes()
    }
}

/// Decides `D² = 0`. `D² = 𝓛_{½[K,K] + ι_L K} + ι_{[K,L] + ½[L,L]_RN}`, so
/// both tensors must vanish.
pub fn check_cohomology(d: &DerivationDeg1) -> Result<CohomologyReport> {
    let chart: &Chart = d.chart();
    let half = chart.parse("1/2")?;
    let k_after_l = d.k.compose(&d.l)?;
    let condition1 = fn_bracket(&d.k, &d.k)?.scale(&half).add(&k_after_l)?;
    let via_torsion = nijenhuis_torsion(&d.k)?.add(&k_after_l)?;
    let condition2 = fn_bracket(&d.k, &d.l)?.add(&rn_bracket(&d.l, &d.l)?.scale(&half))?;
    let n = chart.dim();
    let mut square_on_functions = Vec::with_capacity(n);
    let mut square_on_differentials = Vec::with_capacity(n);
    for j in 0..n {
        let x = KForm::function(chart, chart.coordinate(j));
        square_on_functions.push(d.apply(&d.apply(&x)?)?);
        square_on_differentials.push(d.apply(&d.apply(&KForm::differential(chart, j))?)?);
    }
    Ok(CohomologyReport {
        torsion_route_agrees: via_torsion == condition1,
        condition1,
        condition2,
        square_on_functions,
        square_on_differentials,
    })
}

/// The algebroid `(K, L)` of a cohomology operator `D = 𝓛_K + ι_L`.
pub fn algebroid_from_derivation(d: &DerivationDeg1) -> Result<TangentAlgebroid> {
    let report = check_cohomology(d)?;
    if !report.passes() {
        return Err(Error::NotCohomology(Box::new(report)));
    }
    TangentAlgebroid::new(d.k.clone(), d.l.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_derivative_squares_to_zero() {
        let c = Chart::new(&["x", "y", "z"]).unwrap();
        let d = TangentAlgebroid::trivial(&c).derivation();
        let r = check_cohomology(&d).unwrap();
        assert!(r.passes());
        assert!(r.consistent());
    }

    #[test]
    fn non_integrable_anchor_fails_with_torsion() {
        let c = Chart::new(&["x", "y", "z", "w"]).unwrap();
        let j2 = VectorValuedForm::parse_matrix(
            &c,
            &[vec!["0", "-1", "0", "x"], vec!["1", "0", "x", "0"], vec!["0", "0", "0", "-1"], vec!["0", "0", "1", "0"]],
        )
        .unwrap();
        let d = DerivationDeg1::new(j2.clone(), VectorValuedForm::zero(&c, 2)).unwrap();
        let r = check_cohomology(&d).unwrap();
        assert!(!r.passes());
        assert!(r.consistent());
        assert_eq!(r.condition1, nijenhuis_torsion(&j2).unwrap());
        assert!(matches!(algebroid_from_derivation(&d), Err(Error::NotCohomology(_))));
    }
}
