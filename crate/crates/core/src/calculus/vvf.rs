use std::fmt;

use super::alternating::{increasing, sort_with_sign, MultiIndex};
use super::chart::Chart;
use super::field::VectorField;
use super::form::KForm;
use super::matrix;
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A vector-valued `k`-form `K = Σ_j K^j ⊗ ∂_j`, stored as one scalar
/// `k`-form per target direction.
///
/// Degree 0 is a vector field and degree 1 an endomorphism of the tangent
/// bundle. For an endomorphism, `matrix()[i][j]` is the coefficient of `∂_i`
/// in `K ∂_j`, so column `j` is the image of `∂_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorValuedForm {
    chart: Chart,
    degree: usize,
    comps: Vec<KForm>,
}

impl VectorValuedForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self { chart: chart.clone(), degree, comps: vec![KForm::zero(chart, degree); chart.dim()] }
    }

    /// From the target components `K^j`, one `k`-form per coordinate.
    pub fn from_components(chart: &Chart, comps: Vec<KForm>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::Shape(format!("{} components on a {}-dimensional chart", comps.len(), chart.dim())));
        }
        let degree = comps[0].degree();
        for c in &comps {
            chart.check_same(c.chart())?;
            if c.degree() != degree {
                return Err(Error::Shape("components of different degrees".into()));
            }
        }
        Ok(Self { chart: chart.clone(), degree, comps })
    }

    pub fn from_field(x: &VectorField) -> Self {
        let chart = x.chart();
        let comps = x.components().iter().map(|c| KForm::function(chart, c.clone())).collect();
        Self { chart: chart.clone(), degree: 0, comps }
    }

    /// An endomorphism from its matrix (`rows[i][j]` = coefficient of `∂_i`
    /// in the image of `∂_j`).
    pub fn from_matrix(chart: &Chart, rows: Vec<Vec<ScalarExpr>>) -> Result<Self> {
        let n = chart.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("endomorphism matrix must be {n}×{n}")));
        }
        let comps = rows
            .into_iter()
            .map(|row| KForm::from_coeffs(chart, 1, row.into_iter().enumerate().map(|(j, c)| (vec![j], c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { chart: chart.clone(), degree: 1, comps })
    }

    pub fn parse_matrix<S: AsRef<str>>(chart: &Chart, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| chart.parse(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(chart, rows)
    }

    /// An endomorphism from the images of the coordinate fields.
    pub fn from_columns(chart: &Chart, columns: &[VectorField]) -> Result<Self> {
        if columns.len() != chart.dim() {
            return Err(Error::Shape(format!("{} columns on a {}-dimensional chart", columns.len(), chart.dim())));
        }
        Self::from_basis_values(chart, 1, |idx| Ok(columns[idx[0]].clone()))
    }

    pub fn identity(chart: &Chart) -> Self {
        let n = chart.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { chart.one() } else { chart.zero() }).collect()).collect();
        Self::from_matrix(chart, rows).expect("identity is square")
    }

    /// Builds `K` from its values `K(∂_I)` on increasing multi-indices.
    pub fn from_basis_values<F>(chart: &Chart, degree: usize, mut value: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Result<VectorField>,
    {
        let n = chart.dim();
        let mut entries: Vec<Vec<(Vec<usize>, ScalarExpr)>> = vec![Vec::new(); n];
        for idx in increasing(n, degree) {
            let v = value(&idx)?;
            chart.check_same(v.chart())?;
            for (j, c) in v.components().iter().enumerate() {
                if !c.is_zero() {
                    entries[j].push((idx.clone(), c.clone()));
                }
            }
        }
        let comps = entries.into_iter().map(|e| KForm::from_coeffs(chart, degree, e)).collect::<Result<Vec<_>>>()?;
        Ok(Self { chart: chart.clone(), degree, comps })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The scalar form `K^j`.
    pub fn component(&self, j: usize) -> &KForm {
        &self.comps[j]
    }

    pub fn components(&self) -> &[KForm] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(KForm::is_zero)
    }

    /// `K(∂_{i_1}, …, ∂_{i_k})` for any index list.
    pub fn value_on_basis(&self, index: &[usize]) -> VectorField {
        let comps = match sort_with_sign(index) {
            None => vec![self.chart.zero(); self.chart.dim()],
            Some(_) => self.comps.iter().map(|c| c.coeff(index)).collect(),
        };
        VectorField::from_vec(&self.chart, comps)
    }

    /// `K(X_1, …, X_k)`.
    pub fn eval(&self, fields: &[VectorField]) -> Result<VectorField> {
        let comps = self.comps.iter().map(|c| c.eval(fields)).collect::<Result<Vec<_>>>()?;
        Ok(VectorField::from_vec(&self.chart, comps))
    }

    /// Nonzero values `K(∂_I)` over increasing `I`.
    pub fn nonzero_values(&self) -> Vec<(MultiIndex, VectorField)> {
        increasing(self.chart.dim(), self.degree)
            .into_iter()
            .map(|i| {
                let v = self.value_on_basis(&i);
                (i, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.degree != 1 {
            return Err(Error::Shape(format!("expected an endomorphism, got a vector-valued {}-form", self.degree)));
        }
        Ok(())
    }

    pub fn matrix(&self) -> Result<Vec<Vec<ScalarExpr>>> {
        self.require_endomorphism()?;
        let n = self.chart.dim();
        Ok(self.comps.iter().map(|c| (0..n).map(|j| c.coeff(&[j])).collect()).collect())
    }

    /// `K X` for an endomorphism `K`.
    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        self.require_endomorphism()?;
        self.eval(std::slice::from_ref(x))
    }

    pub fn as_field(&self) -> Option<VectorField> {
        (self.degree == 0)
            .then(|| VectorField::from_vec(&self.chart, self.comps.iter().map(|c| c.coeff(&[])).collect()))
    }

    /// `N ∘ K`, where `self = N` is an endomorphism: `(N∘K)(X…) = N(K(X…))`.
    pub fn compose(&self, k: &Self) -> Result<Self> {
        self.require_endomorphism()?;
        self.chart.check_same(&k.chart)?;
        let n = self.chart.dim();
        let m = self.matrix()?;
        let mut comps = Vec::with_capacity(n);
        for row in &m {
            let mut acc = KForm::zero(&self.chart, k.degree);
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() && !k.comps[j].is_zero() {
                    acc = acc.add(&k.comps[j].scale(a))?;
                }
            }
            comps.push(acc);
        }
        Ok(Self { chart: self.chart.clone(), degree: k.degree, comps })
    }

    /// Determinant of an endomorphism.
    pub fn det(&self) -> Result<ScalarExpr> {
        Ok(matrix::det(&self.matrix()?))
    }

    /// Inverse endomorphism; fails when the determinant vanishes identically.
    pub fn inverse(&self) -> Result<Self> {
        let inv = matrix::inverse(&self.matrix()?)?;
        Self::from_matrix(&self.chart, inv)
    }

    fn zip(&self, other: &Self, f: impl Fn(&KForm, &KForm) -> Result<KForm>) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::Shape(format!("combining degrees {} and {}", self.degree, other.degree)));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(Self { chart: self.chart.clone(), degree: self.degree, comps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, KForm::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, KForm::sub)
    }

    pub fn neg(&self) -> Self {
        Self { chart: self.chart.clone(), degree: self.degree, comps: self.comps.iter().map(KForm::neg).collect() }
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        Self { chart: self.chart.clone(), degree: self.degree, comps: self.comps.iter().map(|c| c.scale(f)).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { chart: self.chart.clone(), degree: self.degree, comps: self.comps.iter().map(KForm::conj).collect() }
    }

    pub fn on_chart(&self, chart: &Chart) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.on_chart(chart)).collect::<Result<Vec<_>>>()?;
        Ok(Self { chart: chart.clone(), degree: self.degree, comps })
    }
}

impl fmt::Display for VectorValuedForm {
    /// Lists the nonzero values on coordinate fields, e.g. `(∂z, ∂w) ↦ ∂x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals = self.nonzero_values();
        if vals.is_empty() {
            return f.write_str("0");
        }
        let lines: Vec<String> = vals
            .iter()
            .map(|(idx, v)| {
                let args: Vec<String> = idx.iter().map(|&i| self.chart.basis_label(i)).collect();
                format!("({}) ↦ {v}", args.join(", "))
            })
            .collect();
        f.write_str(&lines.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation() -> VectorValuedForm {
        let c = Chart::new(&["x", "y"]).unwrap();
        VectorValuedForm::parse_matrix(&c, &[vec!["0", "-1"], vec!["1", "0"]]).unwrap()
    }

    #[test]
    fn column_is_image_of_basis_field() {
        let j = rotation();
        let c = j.chart().clone();
        assert_eq!(j.apply(&VectorField::basis(&c, 0)).unwrap(), VectorField::basis(&c, 1));
        assert_eq!(j.apply(&VectorField::basis(&c, 1)).unwrap(), VectorField::basis(&c, 0).neg());
    }

    #[test]
    fn square_of_rotation() {
        let j = rotation();
        let jj = j.compose(&j).unwrap();
        assert_eq!(jj, VectorValuedForm::identity(j.chart()).neg());
        assert_eq!(j.inverse().unwrap(), j.neg());
        assert!(j.det().unwrap().is_one());
    }
}
