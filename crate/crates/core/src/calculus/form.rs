use std::fmt;

use super::alternating::{increasing, Alternating, MultiIndex};
use super::chart::Chart;
use super::field::VectorField;
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A differential `p`-form `Σ ω_I dx^I` on a chart.
///
/// `ω(∂_I) = ω_I` for increasing `I`, and `(dx^I)(X_1, …, X_p)` is the
/// determinant of `dx^{i_a}(X_b)`. Degrees above the chart dimension are
/// allowed and always hold the zero form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    chart: Chart,
    alt: Alternating,
}

impl KForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self { chart: chart.clone(), alt: Alternating::zero(degree, chart.dim()) }
    }

    pub fn function(chart: &Chart, f: ScalarExpr) -> Self {
        let mut alt = Alternating::zero(0, chart.dim());
        alt.add_at(&[], &f);
        Self { chart: chart.clone(), alt }
    }

    /// `dx^j`.
    pub fn differential(chart: &Chart, j: usize) -> Self {
        let mut alt = Alternating::zero(1, chart.dim());
        alt.add_at(&[j], &chart.one());
        Self { chart: chart.clone(), alt }
    }

    /// Builds a form from `(index list, coefficient)` pairs. Index lists need
    /// not be sorted; repeated pairs add up.
    pub fn from_coeffs<I>(chart: &Chart, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    {
        let mut alt = Alternating::zero(degree, chart.dim());
        for (idx, c) in entries {
            if idx.len() != degree {
                return Err(Error::Shape(format!("index of length {} in a {degree}-form", idx.len())));
            }
            if let Some(&bad) = idx.iter().find(|&&v| v >= chart.dim()) {
                return Err(Error::Index(format!("coordinate index {bad} on a {}-dimensional chart", chart.dim())));
            }
            let mut seen = idx.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != idx.len() {
                return Err(Error::Index(format!("repeated index in {idx:?}")));
            }
            chart.admit(&c)?;
            alt.add_at(&idx, &c);
        }
        Ok(Self { chart: chart.clone(), alt })
    }

    pub(crate) fn from_alternating(chart: &Chart, alt: Alternating) -> Self {
        Self { chart: chart.clone(), alt }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.alt.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.alt.is_zero()
    }

    /// The coefficient `ω_I` at an increasing multi-index.
    pub fn coeff(&self, index: &[usize]) -> ScalarExpr {
        self.alt.get_unsorted(index)
    }

    /// Nonzero coefficients in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.alt.iter()
    }

    /// For a 0-form, the function it holds.
    pub fn as_function(&self) -> Option<ScalarExpr> {
        (self.degree() == 0).then(|| self.alt.get(&[]))
    }

    fn same(&self, other: &Self) -> Result<()> {
        self.chart.check_same(&other.chart)?;
        if self.degree() != other.degree() {
            return Err(Error::Shape(format!("adding a {}-form to a {}-form", other.degree(), self.degree())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { chart: self.chart.clone(), alt: self.alt.add(&other.alt) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { chart: self.chart.clone(), alt: self.alt.sub(&other.alt) })
    }

    pub fn neg(&self) -> Self {
        Self { chart: self.chart.clone(), alt: self.alt.neg() }
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        Self { chart: self.chart.clone(), alt: self.alt.scale(f) }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), alt: self.alt.wedge(&other.alt) })
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let n = self.chart.dim();
        let mut alt = Alternating::zero(self.degree() + 1, n);
        for (idx, c) in self.alt.iter() {
            for v in 0..n {
                if idx.contains(&v) {
                    continue;
                }
                let dc = c.partial(v);
                if dc.is_zero() {
                    continue;
                }
                let mut full = vec![v];
                full.extend_from_slice(idx);
                alt.add_at(&full, &dc);
            }
        }
        Self { chart: self.chart.clone(), alt }
    }

    /// `ω(X_1, …, X_p)`.
    pub fn eval(&self, fields: &[VectorField]) -> Result<ScalarExpr> {
        if fields.len() != self.degree() {
            return Err(Error::Shape(format!("{} arguments for a {}-form", fields.len(), self.degree())));
        }
        for f in fields {
            self.chart.check_same(f.chart())?;
        }
        let mut acc = self.chart.zero();
        for (idx, c) in self.alt.iter() {
            let rows: Vec<Vec<ScalarExpr>> =
                idx.iter().map(|&i| fields.iter().map(|f| f.component(i).clone()).collect()).collect();
            acc = acc + c * &super::matrix::det(&rows);
        }
        Ok(acc)
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        Self { chart: self.chart.clone(), alt: self.alt.map(|c| c.conj()) }
    }

    /// The same form on a chart with identical coordinates, for instance its
    /// complexification.
    pub fn on_chart(&self, chart: &Chart) -> Result<Self> {
        if chart.names() != self.chart.names() {
            return Err(Error::ChartMismatch);
        }
        for (_, c) in self.alt.iter() {
            chart.admit(c)?;
        }
        Ok(Self { chart: chart.clone(), alt: self.alt.clone() })
    }

    /// Coefficients at every increasing index, zero entries included.
    pub fn dense(&self) -> Vec<(MultiIndex, ScalarExpr)> {
        increasing(self.chart.dim(), self.degree()).into_iter().map(|i| (i.clone(), self.alt.get(&i))).collect()
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.chart.names();
        let parts: Vec<String> = self
            .alt
            .iter()
            .map(|(idx, c)| {
                let coeff = self.chart.render(c);
                if idx.is_empty() {
                    return coeff;
                }
                let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
                format!("({coeff}) {}", basis.join("∧"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn d_squared_vanishes() {
        let c = chart();
        let f = c.parse("x^2*y + z/(1 + x^2)").unwrap();
        let w = KForm::function(&c, f);
        assert!(w.d().d().is_zero());
        let a = KForm::from_coeffs(&c, 1, [(vec![1], c.parse("x*z").unwrap())]).unwrap();
        assert!(a.d().d().is_zero());
    }

    #[test]
    fn evaluation_is_determinant() {
        let c = chart();
        let w = KForm::differential(&c, 0).wedge(&KForm::differential(&c, 1)).unwrap();
        let e0 = VectorField::basis(&c, 0);
        let e1 = VectorField::basis(&c, 1);
        assert!(w.eval(&[e0.clone(), e1.clone()]).unwrap().is_one());
        assert_eq!(w.eval(&[e1, e0]).unwrap(), c.int(-1));
    }

    #[test]
    fn rejects_repeated_index() {
        let c = chart();
        assert!(KForm::from_coeffs(&c, 2, [(vec![1, 1], c.one())]).is_err());
        assert!(KForm::from_coeffs(&c, 1, [(vec![3], c.one())]).is_err());
    }

    #[test]
    fn degree_above_dimension_is_zero() {
        let c = Chart::new(&["x"]).unwrap();
        let dx = KForm::differential(&c, 0);
        let w = dx.wedge(&dx).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 2);
    }
}
