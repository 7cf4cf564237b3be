use super::idempotent::{idempotent_algebroid, labels, IdempotentAlgebroid};
use crate::algebroid::Residual;
use crate::calculus::matrix::rank;
use crate::calculus::{
    contracted_bracket, lie_derivative_along, nijenhuis_torsion, Chart, VectorField, VectorValuedForm,
};
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A chart `(x¹, …, xⁿ, u¹, …, uⁿ)` on `TM` with the vertical endomorphism
/// `J∂_{x^i} = ∂_{u^i}`, `J∂_{u^i} = 0`, and the Liouville field
/// `C = Σ u^i ∂_{u^i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentChartData {
    chart: Chart,
    n: usize,
    vertical: VectorValuedForm,
    liouville: VectorField,
}

impl TangentChartData {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The dimension of the base.
    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn vertical(&self) -> &VectorValuedForm {
        &self.vertical
    }

    pub fn liouville(&self) -> &VectorField {
        &self.liouville
    }

    /// `J²`, `JC`, `T_J` and `𝓛_C J + J`, all of which vanish.
    pub fn identities(&self) -> Result<Vec<Residual<VectorValuedForm>>> {
        let j = &self.vertical;
        Ok(vec![
            Residual::new("J∘J", vec![], j.compose(j)?),
            Residual::new("J C", vec![], VectorValuedForm::from_field(&j.apply(&self.liouville)?)),
            Residual::new("T_J", vec![], nijenhuis_torsion(j)?),
            Residual::new("𝓛_C J + J", vec![], lie_derivative_along(&self.liouville, j)?.add(j)?),
        ])
    }

    /// `ker J = im J`: with `J² = 0` the image lies in the kernel, and both
    /// have dimension `n` exactly when `J` has rank `n`.
    pub fn kernel_equals_image(&self) -> Result<bool> {
        Ok(self.vertical.compose(&self.vertical)?.is_zero() && rank(&self.vertical.matrix()?) == self.n)
    }
}

/// Coordinates `(x, u)` for `n = 1`, otherwise `(x1, …, xn, u1, …, un)`.
pub fn tangent_chart(n: usize) -> Result<TangentChartData> {
    if n == 0 {
        return Err(Error::InvalidChart("the base must have positive dimension".into()));
    }
    let names: Vec<String> = if n == 1 {
        vec!["x".into(), "u".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("u{i}"))).collect()
    };
    let chart = Chart::new(&names)?;
    let columns: Vec<VectorField> =
        (0..2 * n).map(|a| if a < n { VectorField::basis(&chart, n + a) } else { VectorField::zero(&chart) }).collect();
    let vertical = VectorValuedForm::from_columns(&chart, &columns)?;
    let comps = (0..2 * n).map(|a| if a < n { chart.zero() } else { chart.coordinate(a) }).collect();
    let liouville = VectorField::new(&chart, comps)?;
    Ok(TangentChartData { chart, n, vertical, liouville })
}

/// `S = Σ u^i ∂_{x^i} + f^i ∂_{u^i}`.
pub fn semispray(tc: &TangentChartData, f: &[ScalarExpr]) -> Result<VectorField> {
    let n = tc.n;
    if f.len() != n {
        return Err(Error::Shape(format!("{} coefficients for a base of dimension {n}", f.len())));
    }
    let comps = (0..n).map(|i| tc.chart.coordinate(n + i)).chain(f.iter().cloned()).collect();
    let s = VectorField::new(&tc.chart, comps)?;
    check_semispray(tc, &s)?;
    Ok(s)
}

/// Accepts `S` exactly when `J S = C`.
pub fn check_semispray(tc: &TangentChartData, s: &VectorField) -> Result<()> {
    if tc.vertical.apply(s)? != tc.liouville {
        return Err(Error::NotSemispray);
    }
    Ok(())
}

/// `Γ² − Id`, `JΓ − J` and `ΓJ + J`.
fn connection_identities(tc: &TangentChartData, gamma: &VectorValuedForm) -> Result<Vec<Residual<VectorValuedForm>>> {
    let j = &tc.vertical;
    let id = VectorValuedForm::identity(&tc.chart);
    Ok(vec![
        Residual::new("Γ∘Γ − Id", vec![], gamma.compose(gamma)?.sub(&id)?),
        Residual::new("J∘Γ − J", vec![], j.compose(gamma)?.sub(j)?),
        Residual::new("Γ∘J + J", vec![], gamma.compose(j)?.add(j)?),
    ])
}

fn require_connection(tc: &TangentChartData, gamma: &VectorValuedForm) -> Result<()> {
    tc.chart.check_same(gamma.chart())?;
    match connection_identities(tc, gamma)?.into_iter().find(|r| !r.vanishes()) {
        Some(r) => Err(Error::ConnectionAxiom(r.slot)),
        None => Ok(()),
    }
}

/// The connection `Γ = −𝓛_S J` of a semispray with its projectors
/// `h = ½(Id + Γ)` and `v = ½(Id − Γ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemisprayConnection {
    pub gamma: VectorValuedForm,
    pub horizontal: VectorValuedForm,
    pub vertical: VectorValuedForm,
    /// `Γ² − Id`, `JΓ − J`, `ΓJ + J`, `v² − v`, `h + v − Id`, `Jv` and
    /// `vJ − J`; the last two say `im v` is the vertical bundle `im J`.
    pub identities: Vec<Residual<VectorValuedForm>>,
}

pub fn connection_from_semispray(tc: &TangentChartData, s: &VectorField) -> Result<SemisprayConnection> {
    check_semispray(tc, s)?;
    let gamma = lie_derivative_along(s, &tc.vertical)?.neg();
    let j = &tc.vertical;
    let id = VectorValuedForm::identity(&tc.chart);
    let half = tc.chart.parse("1/2")?;
    let horizontal = id.add(&gamma)?.scale(&half);
    let vertical = id.sub(&gamma)?.scale(&half);
    let mut identities = connection_identities(tc, &gamma)?;
    identities.extend([
        Residual::new("v∘v − v", vec![], vertical.compose(&vertical)?.sub(&vertical)?),
        Residual::new("h + v − Id", vec![], horizontal.add(&vertical)?.sub(&id)?),
        Residual::new("J∘v", vec![], j.compose(&vertical)?),
        Residual::new("v∘J − J", vec![], vertical.compose(j)?.sub(j)?),
    ]);
    if let Some(r) = identities.iter().find(|r| !r.vanishes()) {
        return Err(Error::ConnectionAxiom(r.slot.clone()));
    }
    Ok(SemisprayConnection { gamma, horizontal, vertical, identities })
}

/// The algebroid of a connection on `TM`: anchor `v = ½(Id − Γ)` and bracket
/// `½([A, B] − [A, B]_Γ) + ¼T_Γ(A, B)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectionAlgebroid {
    pub idempotent: IdempotentAlgebroid,
    /// `T_v − ¼T_Γ`.
    pub torsion_relation: VectorValuedForm,
    /// `[[∂_a, ∂_b]] − ½([∂_a, ∂_b] − [∂_a, ∂_b]_Γ) − ¼T_Γ(∂_a, ∂_b)`.
    pub bracket_form: Vec<Residual<VectorField>>,
}

pub fn connection_algebroid(tc: &TangentChartData, gamma: &VectorValuedForm) -> Result<ConnectionAlgebroid> {
    require_connection(tc, gamma)?;
    let chart = &tc.chart;
    let half = chart.parse("1/2")?;
    let quarter = chart.parse("1/4")?;
    let v = VectorValuedForm::identity(chart).sub(gamma)?.scale(&half);
    let idempotent = idempotent_algebroid(&v)?;
    let t_gamma = nijenhuis_torsion(gamma)?;
    let torsion_relation = idempotent.torsion.sub(&t_gamma.scale(&quarter))?;
    let mut bracket_form = Vec::new();
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let (x, y) = (VectorField::basis(chart, a), VectorField::basis(chart, b));
            let closed = x
                .lie_bracket(&y)?
                .sub(&contracted_bracket(gamma, &x, &y)?)?
                .scale(&half)
                .add(&t_gamma.value_on_basis(&[a, b]).scale(&quarter))?;
            let r = idempotent.algebroid.bracket(&x, &y)?.sub(&closed)?;
            bracket_form.push(Residual::new("bracket, Γ form", labels(chart, &[a, b]), r));
        }
    }
    Ok(ConnectionAlgebroid { idempotent, torsion_relation, bracket_form })
}
