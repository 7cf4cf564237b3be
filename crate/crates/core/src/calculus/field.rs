use std::fmt;

use super::chart::Chart;
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A vector field `Σ X^j ∂_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<ScalarExpr>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<ScalarExpr>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::Shape(format!("{} components on a {}-dimensional chart", comps.len(), chart.dim())));
        }
        for c in &comps {
            chart.admit(c)?;
        }
        Ok(Self { chart: chart.clone(), comps })
    }

    /// Parses one component string per coordinate.
    pub fn parse<S: AsRef<str>>(chart: &Chart, comps: &[S]) -> Result<Self> {
        let comps = comps.iter().map(|s| chart.parse(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(chart, comps)
    }

    pub(crate) fn from_vec(chart: &Chart, comps: Vec<ScalarExpr>) -> Self {
        debug_assert_eq!(comps.len(), chart.dim());
        Self { chart: chart.clone(), comps }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self { chart: chart.clone(), comps: vec![chart.zero(); chart.dim()] }
    }

    /// The coordinate field `∂_j`.
    pub fn basis(chart: &Chart, j: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[j] = chart.one();
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, j: usize) -> &ScalarExpr {
        &self.comps[j]
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        Ok(Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self { chart: self.chart.clone(), comps: self.comps.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        Self { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    /// Directional derivative `X(f) = Σ X^j ∂_j f`.
    pub fn apply(&self, f: &ScalarExpr) -> ScalarExpr {
        let mut acc = self.chart.zero();
        for (j, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c * &f.partial(j);
            }
        }
        acc
    }

    /// `[X, Y]^j = X(Y^j) − Y(X^j)`.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        let comps = (0..self.chart.dim()).map(|j| self.apply(&other.comps[j]) - other.apply(&self.comps[j])).collect();
        Ok(Self { chart: self.chart.clone(), comps })
    }

    pub fn conj(&self) -> Self {
        Self { chart: self.chart.clone(), comps: self.comps.iter().map(ScalarExpr::conj).collect() }
    }

    pub fn on_chart(&self, chart: &Chart) -> Result<Self> {
        if chart.names() != self.chart.names() {
            return Err(Error::ChartMismatch);
        }
        Self::new(chart, self.comps.clone())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let label = self.chart.basis_label(j);
                if c.is_one() {
                    label
                } else {
                    format!("({}) {label}", self.chart.render(c))
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
