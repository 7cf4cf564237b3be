use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::ScalarExpr;
use super::gaussian::GaussianRational;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A point of a chart, one exact coordinate per chart variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartPoint {
    pub coordinates: Vec<GaussianRational>,
}

impl ChartPoint {
    pub fn new(coordinates: Vec<GaussianRational>) -> Self {
        Self { coordinates }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }
}

/// Evaluates `e` at `p`, failing on a pole or a dimension mismatch.
pub fn eval_at(e: &ScalarExpr, p: &ChartPoint) -> Result<GaussianRational> {
    if e.nvars() != p.dim() && !(e.as_constant().is_some()) {
        return Err(Error::Shape(format!("point of dimension {} for {} variables", p.dim(), e.nvars())));
    }
    if let Some(c) = e.as_constant() {
        return Ok(c);
    }
    e.eval(&p.coordinates)
}

/// Deterministic pseudo-random point with coordinates `p/q`,
/// `|p| <= bound`, `1 <= q <= bound`.
pub fn random_point(dim: usize, seed: u64, bound: u32) -> ChartPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound.max(1) as i64;
    let coords = (0..dim)
        .map(|_| {
            let p = rng.gen_range(-b..=b);
            let q = rng.gen_range(1..=b);
            GaussianRational::from_ratio(p, q)
        })
        .collect();
    ChartPoint::new(coords)
}

/// Random polynomial of total degree at most `max_degree` with small integer
/// coefficients; each monomial is included with probability one half.
pub fn random_poly<R: Rng>(nvars: usize, max_degree: u32, coeff_bound: i64, rng: &mut R) -> Poly {
    let mut terms = Vec::new();
    for e in monomials_up_to(nvars, max_degree) {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-coeff_bound..=coeff_bound);
            if c != 0 {
                terms.push((e, GaussianRational::from_int(c)));
            }
        }
    }
    Poly::from_terms(nvars, terms)
}

/// All exponent vectors of total degree at most `max_degree`.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(nvars, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_point() {
        assert_eq!(random_point(2, 17, 5), random_point(2, 17, 5));
        assert_eq!(random_point(4, 3, 5).dim(), 4);
    }

    #[test]
    fn unit_bound_gives_small_coordinates() {
        for seed in 0..20 {
            for c in random_point(3, seed, 1).coordinates {
                assert!(c.is_real());
                let v = c.re;
                assert!(v.is_integer() && v.numer().magnitude() <= &1u32.into());
            }
        }
    }

    #[test]
    fn monomial_count() {
        // C(4 + 2, 2) = 15 monomials of degree <= 2 in 4 variables
        assert_eq!(monomials_up_to(4, 2).len(), 15);
    }
}
