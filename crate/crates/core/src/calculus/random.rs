//! Deterministic random tensors with polynomial coefficients, used for
//! sampling identities.

use rand::Rng;

use super::alternating::increasing;
use super::chart::Chart;
use super::field::VectorField;
use super::form::KForm;
use super::vvf::VectorValuedForm;
use crate::scalar::{random_poly, ScalarExpr};

const COEFF_BOUND: i64 = 3;

pub fn random_function<R: Rng>(chart: &Chart, degree: u32, rng: &mut R) -> ScalarExpr {
    ScalarExpr::from_poly(random_poly(chart.dim(), degree, COEFF_BOUND, rng))
}

pub fn random_field<R: Rng>(chart: &Chart, degree: u32, rng: &mut R) -> VectorField {
    let comps = (0..chart.dim()).map(|_| random_function(chart, degree, rng)).collect();
    VectorField::new(chart, comps).expect("polynomial coefficients are admissible")
}

pub fn random_form<R: Rng>(chart: &Chart, p: usize, degree: u32, rng: &mut R) -> KForm {
    let entries: Vec<_> =
        increasing(chart.dim(), p).into_iter().map(|i| (i, random_function(chart, degree, rng))).collect();
    KForm::from_coeffs(chart, p, entries).expect("indices are increasing")
}

pub fn random_vvf<R: Rng>(chart: &Chart, k: usize, degree: u32, rng: &mut R) -> VectorValuedForm {
    let comps = (0..chart.dim()).map(|_| random_form(chart, k, degree, rng)).collect();
    VectorValuedForm::from_components(chart, comps).expect("components share chart and degree")
}

pub fn random_endomorphism<R: Rng>(chart: &Chart, degree: u32, rng: &mut R) -> VectorValuedForm {
    random_vvf(chart, 1, degree, rng)
}
