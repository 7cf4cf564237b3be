use crate::calculus::{contracted_bracket, fn_decompose, Chart, DerivationDeg1, KForm, VectorField, VectorValuedForm};
use crate::error::Result;

/// A Lie algebroid structure on `TM` given by an anchor `K` and a correction
/// `L`, with bracket `[[X, Y]] = [X, Y]_K − L(X, Y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentAlgebroid {
    k: VectorValuedForm,
    l: VectorValuedForm,
}

impl TangentAlgebroid {
    pub fn new(anchor: VectorValuedForm, correction: VectorValuedForm) -> Result<Self> {
        let d = DerivationDeg1::new(anchor, correction)?;
        Ok(Self { k: d.k, l: d.l })
    }

    /// `(Id, 0)`: the Lie bracket of vector fields.
    pub fn trivial(chart: &Chart) -> Self {
        Self { k: VectorValuedForm::identity(chart), l: VectorValuedForm::zero(chart, 2) }
    }

    pub fn chart(&self) -> &Chart {
        self.k.chart()
    }

    pub fn anchor(&self) -> &VectorValuedForm {
        &self.k
    }

    pub fn correction(&self) -> &VectorValuedForm {
        &self.l
    }

    pub fn bracket(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        algebroid_bracket(self, x, y)
    }

    /// The derivation `𝓛_K + ι_L`, taken directly from the stored data.
    pub fn derivation(&self) -> DerivationDeg1 {
        DerivationDeg1 { k: self.k.clone(), l: self.l.clone() }
    }
}

/// `[[X, Y]] = [X, Y]_K − L(X, Y)`.
pub fn algebroid_bracket(alg: &TangentAlgebroid, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    alg.chart().check_same(x.chart())?;
    alg.chart().check_same(y.chart())?;
    contracted_bracket(&alg.k, x, y)?.sub(&alg.l.eval(&[x.clone(), y.clone()])?)
}

/// The de Rham operator of the algebroid, built from its defining rules
///
/// `Df(X) = (KX) f`, `(Dα)(X, Y) = KX(α(Y)) − KY(α(X)) − α([[X, Y]])`
///
/// on coordinate functions and differentials, then split as `𝓛_K' + ι_L'`.
/// For a consistent algebroid `(K', L') = (K, L)`.
pub fn derivation_from_algebroid(alg: &TangentAlgebroid) -> Result<DerivationDeg1> {
    let chart = alg.chart();
    let n = chart.dim();
    let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(chart, a)).collect();
    let anchors: Vec<VectorField> = basis.iter().map(|e| alg.k.apply(e)).collect::<Result<_>>()?;
    let mut d_x = Vec::with_capacity(n);
    for j in 0..n {
        let xj = chart.coordinate(j);
        let entries = (0..n).map(|a| (vec![a], anchors[a].apply(&xj)));
        d_x.push(KForm::from_coeffs(chart, 1, entries)?);
    }
    // dx^j(∂_b) is constant, so only the bracket term survives
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            brackets.push(((a, b), algebroid_bracket(alg, &basis[a], &basis[b])?));
        }
    }
    let mut d_dx = Vec::with_capacity(n);
    for j in 0..n {
        let entries = brackets.iter().map(|((a, b), v)| (vec![*a, *b], -v.component(j)));
        d_dx.push(KForm::from_coeffs(chart, 2, entries)?);
    }
    fn_decompose(chart, &d_x, &d_dx)
}

/// `(Dω)(∂_{i_0}, …, ∂_{i_p})` by the invariant formula
///
/// `Σ_a (−1)^a K∂_{i_a}(ω(…î_a…)) + Σ_{a<b} (−1)^{a+b} ω([[∂_{i_a}, ∂_{i_b}]], …)`,
///
/// assembled into a form. Independent of the FN machinery.
pub fn koszul_differential(alg: &TangentAlgebroid, w: &KForm) -> Result<KForm> {
    let chart = alg.chart();
    chart.check_same(w.chart())?;
    let n = chart.dim();
    let p = w.degree();
    let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(chart, a)).collect();
    let anchors: Vec<VectorField> = basis.iter().map(|e| alg.k.apply(e)).collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for idx in crate::calculus::increasing(n, p + 1) {
        let mut acc = chart.zero();
        for a in 0..=p {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(q, _)| *q != a).map(|(_, &v)| v).collect();
            let t = anchors[idx[a]].apply(&w.coeff(&rest));
            acc = if a % 2 == 0 { acc + t } else { acc - t };
        }
        for a in 0..=p {
            for b in a + 1..=p {
                let br = algebroid_bracket(alg, &basis[idx[a]], &basis[idx[b]])?;
                let mut args = vec![br];
                args.extend(idx.iter().enumerate().filter(|(q, _)| *q != a && *q != b).map(|(_, &v)| basis[v].clone()));
                let t = w.eval(&args)?;
                acc = if (a + b) % 2 == 0 { acc + t } else { acc - t };
            }
        }
        entries.push((idx, acc));
    }
    KForm::from_coeffs(chart, p + 1, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{nijenhuis_torsion, FormOperator};

    fn n0_algebroid() -> TangentAlgebroid {
        let c = Chart::new(&["x", "y", "z", "w"]).unwrap();
        let n = VectorValuedForm::parse_matrix(
            &c,
            &[vec!["1", "0", "0", "-z"], vec!["0", "1", "0", "0"], vec!["0", "0", "0", "0"], vec!["0", "0", "0", "0"]],
        )
        .unwrap();
        let t = nijenhuis_torsion(&n).unwrap();
        TangentAlgebroid::new(n, t.neg()).unwrap()
    }

    #[test]
    fn trivial_bracket_is_lie_bracket() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let alg = TangentAlgebroid::trivial(&c);
        let x = VectorField::parse(&c, &["y", "x^2"]).unwrap();
        let y = VectorField::parse(&c, &["1", "x"]).unwrap();
        assert_eq!(alg.bracket(&x, &y).unwrap(), x.lie_bracket(&y).unwrap());
    }

    #[test]
    fn corrected_bracket_kills_torsion_pair() {
        let alg = n0_algebroid();
        let c = alg.chart().clone();
        let v = alg.bracket(&VectorField::basis(&c, 2), &VectorField::basis(&c, 3)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn derivation_round_trip() {
        let alg = n0_algebroid();
        assert_eq!(derivation_from_algebroid(&alg).unwrap(), alg.derivation());
    }

    #[test]
    fn koszul_formula_matches_fn_form() {
        let alg = n0_algebroid();
        let c = alg.chart().clone();
        let w =
            KForm::from_coeffs(&c, 1, [(vec![3], c.parse("x*z").unwrap()), (vec![0], c.parse("w").unwrap())]).unwrap();
        assert_eq!(koszul_differential(&alg, &w).unwrap(), alg.derivation().apply(&w).unwrap());
    }
}
