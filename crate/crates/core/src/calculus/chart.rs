use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{parse_with, ScalarExpr};

#[derive(Debug, PartialEq, Eq)]
struct ChartData {
    names: Vec<String>,
    complexified: bool,
}

/// An ordered list of coordinate names on an open set of ℝⁿ.
///
/// Charts are cheap to clone and compare. Two charts are the same chart when
/// they have the same names in the same order and agree on whether complex
/// coefficients are allowed.
#[derive(Clone, Debug)]
pub struct Chart(Arc<ChartData>);

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Chart {}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl Chart {
    /// A real chart with the given coordinate names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::build(names, false)
    }

    /// A chart whose tensors may carry complex coefficients.
    pub fn complex<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::build(names, true)
    }

    fn build<S: AsRef<str>>(names: &[S], complexified: bool) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        let mut seen: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if n == "i" {
                return Err(Error::InvalidChart("`i` is reserved for the imaginary unit".into()));
            }
            if !valid_identifier(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if seen.iter().any(|s| s == n) {
                return Err(Error::InvalidChart(format!("coordinate `{n}` appears twice")));
            }
            seen.push(n.to_string());
        }
        Ok(Self(Arc::new(ChartData { names: seen, complexified })))
    }

    /// The same coordinates with complex coefficients allowed.
    pub fn complexified(&self) -> Self {
        if self.0.complexified {
            return self.clone();
        }
        Self(Arc::new(ChartData { names: self.0.names.clone(), complexified: true }))
    }

    pub fn dim(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn is_complexified(&self) -> bool {
        self.0.complexified
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Parses a scalar expression over this chart's coordinates.
    pub fn parse(&self, text: &str) -> Result<ScalarExpr> {
        parse_with(text, &self.0.names, self.0.complexified)
    }

    /// Renders `e` with this chart's coordinate names.
    pub fn render(&self, e: &ScalarExpr) -> String {
        e.render(&self.0.names)
    }

    pub fn coordinate(&self, j: usize) -> ScalarExpr {
        ScalarExpr::var(j, self.dim())
    }

    pub fn zero(&self) -> ScalarExpr {
        ScalarExpr::zero(self.dim())
    }

    pub fn one(&self) -> ScalarExpr {
        ScalarExpr::one(self.dim())
    }

    pub fn int(&self, n: i64) -> ScalarExpr {
        ScalarExpr::int(n, self.dim())
    }

    /// `∂x` for the coordinate `x`.
    pub fn basis_label(&self, j: usize) -> String {
        format!("∂{}", self.0.names[j])
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// Checks that `e` may live on this chart.
    pub(crate) fn admit(&self, e: &ScalarExpr) -> Result<()> {
        if e.nvars() > self.dim() {
            return Err(Error::Shape(format!(
                "expression in {} variables on a {}-dimensional chart",
                e.nvars(),
                self.dim()
            )));
        }
        if !self.0.complexified && !e.is_real() {
            return Err(Error::ImaginaryOnRealChart);
        }
        Ok(())
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.names.join(", "))?;
        if self.0.complexified {
            f.write_str(" ⊗ ℂ")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(Chart::new(&["x", "x"]).is_err());
        assert!(Chart::new(&["x", "i"]).is_err());
        assert!(Chart::new(&["2x"]).is_err());
        assert!(Chart::new::<&str>(&[]).is_err());
    }

    #[test]
    fn imaginary_unit_needs_complex_chart() {
        let c = Chart::new(&["x", "y"]).unwrap();
        assert_eq!(c.parse("i*x"), Err(Error::ImaginaryOnRealChart));
        assert!(c.complexified().parse("i*x").is_ok());
    }

    #[test]
    fn equality_is_structural() {
        let a = Chart::new(&["x", "y"]).unwrap();
        let b = Chart::new(&["x", "y"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, a.complexified());
        assert_ne!(a, Chart::new(&["y", "x"]).unwrap());
    }
}
