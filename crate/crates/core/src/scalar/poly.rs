//! Sparse multivariate polynomials over ℚ(i).
//!
//! Terms are kept in strictly decreasing graded-lexicographic order with
//! nonzero coefficients, so two polynomials are equal iff their term lists
//! are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use super::gaussian::GaussianRational;

pub type Exponents = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then exponents of
/// earlier variables dominate.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exponents, GaussianRational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(GaussianRational::one(), nvars)
    }

    pub fn constant(c: GaussianRational, nvars: usize) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Self { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self { nvars, terms: vec![(e, GaussianRational::one())] }
    }

    pub fn monomial(exps: Exponents, c: GaussianRational) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Self { nvars, terms: vec![(exps, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, GaussianRational)>) -> Self {
        let mut acc: HashMap<Exponents, GaussianRational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            *acc.entry(e).or_default() += &c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// The constant value, if this polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Exponents, GaussianRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Lifts a constant to `nvars` variables so binary operations line up.
    fn aligned(&self, nvars: usize) -> std::borrow::Cow<'_, Poly> {
        if self.nvars == nvars {
            return std::borrow::Cow::Borrowed(self);
        }
        let c = self
            .as_constant()
            .unwrap_or_else(|| panic!("polynomials over {} and {} variables mixed", self.nvars, nvars));
        std::borrow::Cow::Owned(Poly::constant(c, nvars))
    }

    fn common_nvars(&self, other: &Poly) -> usize {
        if self.nvars == other.nvars {
            self.nvars
        } else if self.is_constant() {
            other.nvars
        } else {
            self.nvars
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let n = self.common_nvars(other);
        let a = self.aligned(n);
        let b = other.aligned(n);
        let (a, b) = (&a.terms, &b.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: n, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by the single term `c * x^exps`. Term order is preserved
    /// because grlex is a monomial order.
    pub fn mul_term(&self, exps: &[u32], c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c)).collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.common_nvars(other));
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Exponents, GaussianRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += &(ca * cb);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        let (lm, lc) = g.leading()?;
        if let Some(c) = g.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading() {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Exponents = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c * &lc_inv;
            rem = rem.sub(&g.mul_term(&qm, &qc));
            quotient.push((qm, qc));
        }
        Some(Poly { nvars: self.nvars, terms: quotient })
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub fn coeff_in(&self, var: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[var] = 0;
                (e, c.clone())
            })
            .collect::<Vec<_>>();
        // Terms sharing the x_var exponent keep their relative grlex order.
        Poly { nvars: self.nvars, terms }
    }

    /// All coefficients in `x_var`, indexed by power.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        (0..=self.degree_in(var)).map(|k| self.coeff_in(var, k)).collect()
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e = e.clone();
                let k = e[var];
                e[var] -= 1;
                (e, c * &GaussianRational::from_int(k as i64))
            })
            .collect::<Vec<_>>();
        Poly::from_terms(self.nvars, terms)
    }

    pub fn conj(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    fn render_monomial(e: &[u32], names: &[String]) -> String {
        let mut s = String::new();
        for (name, &k) in names.iter().zip(e) {
            if k == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if k > 1 {
                let _ = write!(s, "^{k}");
            }
        }
        s
    }

    /// Renders in the input grammar, terms joined by ` + ` / ` - `.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono = Self::render_monomial(e, names);
            let (negative, mag) = if c.is_negative_like() { (true, -c) } else { (false, c.clone()) };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (idx, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    pub(crate) fn is_single_power(&self) -> bool {
        matches!(self.terms.as_slice(), [(e, c)] if c.is_one() && e.iter().filter(|&&k| k > 0).count() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0, 2)
    }
    fn y() -> Poly {
        Poly::var(1, 2)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        assert_eq!(grlex(&[0, 2], &[1, 0]), Ordering::Greater);
        assert_eq!(grlex(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(grlex(&[2, 0], &[1, 1]), Ordering::Greater);
    }

    #[test]
    fn exact_division_of_difference_of_squares() {
        let a = x().mul(&x()).sub(&y().mul(&y()));
        let b = x().sub(&y());
        assert_eq!(a.exact_div(&b).unwrap(), x().add(&y()));
        assert!(x().exact_div(&y()).is_none());
    }

    #[test]
    fn coefficients_in_a_variable() {
        // x^2 y + 3 x y^2 - 1 as a polynomial in x
        let p = Poly::from_terms(
            2,
            vec![
                (vec![2, 1], GaussianRational::one()),
                (vec![1, 2], GaussianRational::from_int(3)),
                (vec![0, 0], GaussianRational::from_int(-1)),
            ],
        );
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], y());
        assert_eq!(cs[1], y().mul(&y()).scale(&GaussianRational::from_int(3)));
        assert_eq!(cs[0], Poly::constant(GaussianRational::from_int(-1), 2));
    }

    #[test]
    fn render_is_readable() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().mul(&x()).mul(&y()).sub(&Poly::one(2));
        assert_eq!(p.render(&names), "x^2*y - 1");
    }
}
