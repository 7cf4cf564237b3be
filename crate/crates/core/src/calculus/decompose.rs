//! Degree-one derivations of the algebra of forms and their splitting
//! `D = 𝓛_K + ι_L`.

use super::chart::Chart;
use super::form::KForm;
use super::operators::{insertion, lie_derivative, FormOperator};
use super::vvf::VectorValuedForm;
use crate::error::{Error, Result};

/// The derivation `𝓛_K + ι_L` with `K` an endomorphism and `L` a
/// vector-valued 2-form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationDeg1 {
    pub k: VectorValuedForm,
    pub l: VectorValuedForm,
}

impl DerivationDeg1 {
    pub fn new(k: VectorValuedForm, l: VectorValuedForm) -> Result<Self> {
        k.chart().check_same(l.chart())?;
        if k.degree() != 1 || l.degree() != 2 {
            return Err(Error::Shape(format!(
                "a degree-one derivation needs K of degree 1 and L of degree 2, got {} and {}",
                k.degree(),
                l.degree()
            )));
        }
        Ok(Self { k, l })
    }

    pub fn chart(&self) -> &Chart {
        self.k.chart()
    }
}

impl FormOperator for DerivationDeg1 {
    fn degree(&self) -> isize {
        1
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        lie_derivative(&self.k, w)?.add(&insertion(&self.l, w)?)
    }
}

/// Recovers `(K, L)` from the values of a degree-one derivation on the
/// generators: `d_x[j] = D x^j` and `d_dx[j] = D dx^j`.
///
/// `K^j = D x^j` and `L^j = D dx^j − 𝓛_K dx^j = D dx^j + d(K^j)`; the result
/// is checked to reproduce the input on every generator.
pub fn fn_decompose(chart: &Chart, d_x: &[KForm], d_dx: &[KForm]) -> Result<DerivationDeg1> {
    let n = chart.dim();
    if d_x.len() != n || d_dx.len() != n {
        return Err(Error::Shape(format!("need {n} generator images of each kind")));
    }
    for (j, w) in d_x.iter().enumerate() {
        chart.check_same(w.chart())?;
        if w.degree() != 1 {
            return Err(Error::Shape(format!("D x^{} has degree {}, expected 1", j + 1, w.degree())));
        }
    }
    for (j, w) in d_dx.iter().enumerate() {
        chart.check_same(w.chart())?;
        if w.degree() != 2 {
            return Err(Error::Shape(format!("D dx^{} has degree {}, expected 2", j + 1, w.degree())));
        }
    }
    let k = VectorValuedForm::from_components(chart, d_x.to_vec())?;
    let l_comps = d_dx.iter().zip(d_x).map(|(dd, kj)| dd.add(&kj.d())).collect::<Result<Vec<_>>>()?;
    let l = VectorValuedForm::from_components(chart, l_comps)?;
    let der = DerivationDeg1::new(k, l)?;
    for j in 0..n {
        let x = KForm::function(chart, chart.coordinate(j));
        if der.apply(&x)? != d_x[j] {
            return Err(Error::ReconstructionMismatch(format!("D x^{} is not reproduced", j + 1)));
        }
        if der.apply(&KForm::differential(chart, j))? != d_dx[j] {
            return Err(Error::ReconstructionMismatch(format!("D dx^{} is not reproduced", j + 1)));
        }
    }
    Ok(der)
}

/// Decomposes an arbitrary degree-one operator, then checks the result
/// against the operator on products `x^a x^b`, `x^a dx^b` and
/// `dx^a ∧ dx^b`. A mismatch means the operator is not a derivation.
pub fn decompose_operator(chart: &Chart, op: &dyn FormOperator) -> Result<DerivationDeg1> {
    if op.degree() != 1 {
        return Err(Error::Shape(format!("operator of degree {} is not of degree one", op.degree())));
    }
    let n = chart.dim();
    let d_x = (0..n).map(|j| op.apply(&KForm::function(chart, chart.coordinate(j)))).collect::<Result<Vec<_>>>()?;
    let d_dx = (0..n).map(|j| op.apply(&KForm::differential(chart, j))).collect::<Result<Vec<_>>>()?;
    let der = fn_decompose(chart, &d_x, &d_dx)?;
    let mut probes = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a <= b {
                probes.push(KForm::function(chart, chart.coordinate(a) * chart.coordinate(b)));
            }
            probes.push(KForm::differential(chart, b).scale(&chart.coordinate(a)));
            if a < b {
                probes.push(KForm::differential(chart, a).wedge(&KForm::differential(chart, b))?);
            }
        }
    }
    for p in probes {
        if op.apply(&p)? != der.apply(&p)? {
            return Err(Error::ReconstructionMismatch(format!("operator is not a derivation on {p}")));
        }
    }
    Ok(der)
}
