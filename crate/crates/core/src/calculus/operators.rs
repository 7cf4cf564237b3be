//! Insertion, Lie derivatives and graded derivations of the algebra of
//! forms.

use super::alternating::{increasing, shuffles, Alternating};
use super::form::KForm;
use super::vvf::VectorValuedForm;
use crate::error::{Error, Result};

/// `ι_K ω` for `K` of degree `k + 1` and `ω` of degree `p`:
///
/// `(ι_K ω)(X_1, …, X_{k+p}) = Σ_σ sign(σ) ω(K(X_σ1, …, X_σ(k+1)), X_σ(k+2), …)`
///
/// summed over `(k+1, p−1)` shuffles. Inserting into a function gives zero.
pub fn insertion(k: &VectorValuedForm, w: &KForm) -> Result<KForm> {
    let chart = k.chart();
    chart.check_same(w.chart())?;
    let p = w.degree();
    let kk = k.degree();
    if p == 0 || kk + p == 0 {
        return Ok(KForm::zero(chart, (kk + p).saturating_sub(1)));
    }
    let r = kk + p - 1;
    let n = chart.dim();
    let mut alt = Alternating::zero(r, n);
    if w.is_zero() || k.is_zero() {
        return Ok(KForm::from_alternating(chart, alt));
    }
    let split = shuffles(r, kk);
    for target in increasing(n, r) {
        let mut acc = chart.zero();
        for (sign, picked, rest) in &split {
            let a: Vec<usize> = picked.iter().map(|&q| target[q]).collect();
            let b: Vec<usize> = rest.iter().map(|&q| target[q]).collect();
            let mut term = chart.zero();
            for j in 0..n {
                let kj = k.component(j).coeff(&a);
                if kj.is_zero() {
                    continue;
                }
                let mut idx = Vec::with_capacity(p);
                idx.push(j);
                idx.extend_from_slice(&b);
                let wj = w.coeff(&idx);
                if !wj.is_zero() {
                    term = term + kj * wj;
                }
            }
            if *sign > 0 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        alt.add_at(&target, &acc);
    }
    Ok(KForm::from_alternating(chart, alt))
}

/// `𝓛_K = [ι_K, d] = ι_K d − (−1)^{k−1} d ι_K` for `K` of degree `k`.
pub fn lie_derivative(k: &VectorValuedForm, w: &KForm) -> Result<KForm> {
    let a = insertion(k, &w.d())?;
    let b = insertion(k, w)?.d();
    let b = retarget(b, a.degree())?;
    // (−1)^{k−1} = −(−1)^k
    if k.degree().is_multiple_of(2) {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// Replaces a zero form of the wrong degree by the zero form of `degree`.
/// Needed where a negative intermediate degree was clamped to zero.
pub(crate) fn retarget(w: KForm, degree: usize) -> Result<KForm> {
    if w.degree() == degree {
        Ok(w)
    } else if w.is_zero() {
        Ok(KForm::zero(w.chart(), degree))
    } else {
        Err(Error::Shape(format!("a {}-form where a {degree}-form was expected", w.degree())))
    }
}

/// A graded derivation (or any graded linear operator) of the algebra of
/// forms on a chart.
pub trait FormOperator: Sync {
    /// Degree shift; may be negative.
    fn degree(&self) -> isize;

    fn apply(&self, w: &KForm) -> Result<KForm>;
}

/// The exterior derivative `d`.
pub struct ExteriorD;

impl FormOperator for ExteriorD {
    fn degree(&self) -> isize {
        1
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        Ok(w.d())
    }
}

/// The algebraic derivation `ι_K`.
pub struct Insertion(pub VectorValuedForm);

impl FormOperator for Insertion {
    fn degree(&self) -> isize {
        self.0.degree() as isize - 1
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        insertion(&self.0, w)
    }
}

/// The Lie derivation `𝓛_K`.
pub struct LieDerivative(pub VectorValuedForm);

impl FormOperator for LieDerivative {
    fn degree(&self) -> isize {
        self.0.degree() as isize
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        lie_derivative(&self.0, w)
    }
}

fn target_degree(w: &KForm, shift: isize) -> Option<usize> {
    let t = w.degree() as isize + shift;
    (t >= 0).then_some(t as usize)
}

/// Graded commutator `[A, B] = A B − (−1)^{|A||B|} B A`.
pub struct Commutator<'a>(pub &'a dyn FormOperator, pub &'a dyn FormOperator);

impl FormOperator for Commutator<'_> {
    fn degree(&self) -> isize {
        self.0.degree() + self.1.degree()
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        let Some(t) = target_degree(w, self.degree()) else {
            return Ok(KForm::zero(w.chart(), 0));
        };
        let ab = retarget(self.0.apply(&self.1.apply(w)?)?, t)?;
        let ba = retarget(self.1.apply(&self.0.apply(w)?)?, t)?;
        if (self.0.degree() * self.1.degree()).rem_euclid(2) == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }
}

/// Sum of two operators of the same degree.
pub struct OperatorSum<'a>(pub &'a dyn FormOperator, pub &'a dyn FormOperator);

impl FormOperator for OperatorSum<'_> {
    fn degree(&self) -> isize {
        self.0.degree()
    }

    fn apply(&self, w: &KForm) -> Result<KForm> {
        if self.0.degree() != self.1.degree() {
            return Err(Error::Shape("adding operators of different degrees".into()));
        }
        let Some(t) = target_degree(w, self.degree()) else {
            return Ok(KForm::zero(w.chart(), 0));
        };
        retarget(self.0.apply(w)?, t)?.add(&retarget(self.1.apply(w)?, t)?)
    }
}

/// Applies the graded commutator of `a` and `b` to `w`.
pub fn graded_commutator(a: &dyn FormOperator, b: &dyn FormOperator, w: &KForm) -> Result<KForm> {
    Commutator(a, b).apply(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Chart, VectorField};

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn identity_insertion_counts_degree() {
        let c = chart();
        let w = KForm::from_coeffs(&c, 2, [(vec![0, 2], c.parse("x*y").unwrap())]).unwrap();
        let id = VectorValuedForm::identity(&c);
        assert_eq!(insertion(&id, &w).unwrap(), w.scale(&c.int(2)));
    }

    #[test]
    fn lie_of_identity_is_d() {
        let c = chart();
        let w = KForm::from_coeffs(&c, 1, [(vec![1], c.parse("x^2*z").unwrap())]).unwrap();
        let id = VectorValuedForm::identity(&c);
        assert_eq!(lie_derivative(&id, &w).unwrap(), w.d());
    }

    #[test]
    fn cartan_formula_on_functions() {
        let c = chart();
        let x = VectorField::parse(&c, &["y", "1", "x*z"]).unwrap();
        let f = c.parse("x*y + z^2").unwrap();
        let lf = lie_derivative(&VectorValuedForm::from_field(&x), &KForm::function(&c, f.clone())).unwrap();
        assert_eq!(lf.as_function().unwrap(), x.apply(&f));
    }

    #[test]
    fn insertion_of_field_contracts_first_slot() {
        let c = chart();
        let dx = KForm::differential(&c, 0);
        let dy = KForm::differential(&c, 1);
        let w = dx.wedge(&dy).unwrap();
        let x = VectorField::basis(&c, 0);
        assert_eq!(insertion(&VectorValuedForm::from_field(&x), &w).unwrap(), dy);
    }

    #[test]
    fn d_commutes_with_itself_to_zero() {
        let c = chart();
        let w = KForm::function(&c, c.parse("x*y*z").unwrap());
        let half = Commutator(&ExteriorD, &ExteriorD).apply(&w).unwrap();
        assert!(half.is_zero());
    }
}
