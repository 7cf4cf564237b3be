//! Canonical rational functions, the coefficient field of every tensor in
//! the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::gcd::{content, gcd};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A rational function `numerator / denominator` over ℚ(i).
///
/// Invariants: the denominator is nonzero with leading grlex coefficient 1,
/// and numerator and denominator are coprime. Zero is `0 / 1`. Structural
/// equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarExpr {
    num: Poly,
    den: Poly,
}

impl ScalarExpr {
    pub fn zero(nvars: usize) -> Self {
        Self { num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(GaussianRational::one(), nvars)
    }

    pub fn constant(c: GaussianRational, nvars: usize) -> Self {
        Self { num: Poly::constant(c, nvars), den: Poly::one(nvars) }
    }

    pub fn int(n: i64, nvars: usize) -> Self {
        Self::constant(GaussianRational::from_int(n), nvars)
    }

    pub fn ratio(n: i64, d: i64, nvars: usize) -> Self {
        Self::constant(GaussianRational::from_ratio(n, d), nvars)
    }

    pub fn imaginary_unit(nvars: usize) -> Self {
        Self::constant(GaussianRational::i(), nvars)
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        Self::from_poly(Poly::var(index, nvars))
    }

    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        Self { num: p, den: Poly::one(nvars) }
    }

    /// Reduces `num / den` to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        let nvars = num.nvars().max(den.nvars());
        if num.is_zero() {
            return Self::zero(nvars);
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return Self { num: num.scale(&inv), den: Poly::one(nvars) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True when no coefficient has an imaginary part.
    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn conj(&self) -> Self {
        Self::make_monic(self.num.conj(), self.den.conj())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { num: self.num.scale(c), den: self.den.clone() }.fix_zero()
    }

    fn fix_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.nvars())
        } else {
            self
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    /// Exact partial derivative in the variable with index `var`.
    pub fn partial(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone());
        }
        // Split d = c·d₁ with c the content in the variable, so c collects
        // the factors free of it and ∂(n/d) = (n'·d₁ − n·d₁') / (c·d₁²).
        // With g = gcd(d₁, d₁'), h = d₁/g and e = d₁'/g this is
        // (n'·h − n·e) / (c·d₁·h). Every irreducible factor of d₁ involves
        // the variable, so it divides h and not n'·h − n·e. Only a common
        // factor with c can remain.
        let c = content(&self.den, var);
        let (d1, dd1) = if c.is_one() {
            (self.den.clone(), dd)
        } else {
            (self.den.exact_div(&c).expect("content divides"), dd.exact_div(&c).expect("content divides"))
        };
        let g = gcd(&d1, &dd1);
        let (h, e) = if g.is_one() {
            (d1.clone(), dd1)
        } else {
            (d1.exact_div(&g).expect("gcd divides"), dd1.exact_div(&g).expect("gcd divides"))
        };
        let num = dn.mul(&h).sub(&self.num.mul(&e));
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        let den = d1.mul(&h);
        if c.is_one() {
            return Self::make_monic(num, den);
        }
        let shared = gcd(&num, &c);
        if shared.is_one() {
            return Self::make_monic(num, den.mul(&c));
        }
        let rest = c.exact_div(&shared).expect("gcd divides");
        Self::make_monic(num.exact_div(&shared).expect("gcd divides"), den.mul(&rest))
    }

    /// Exact value at a point; fails if the denominator vanishes there.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point).checked_div(&d).expect("nonzero denominator"))
    }

    /// Renders in the input grammar using the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let num = self.num.render(names);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.terms().len() > 1 { format!("({num})") } else { num };
        let den = self.den.render(names);
        if self.den.is_single_power() {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    fn add_impl(&self, other: &Self, subtract: bool) -> Self {
        let combine = |a: &Poly, b: &Poly| if subtract { a.sub(b) } else { a.add(b) };
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(combine(&self.num, &other.num));
        }
        if self.den == other.den {
            return Self::normalize(combine(&self.num, &other.num), self.den.clone());
        }
        if other.den.is_one() {
            return Self { num: combine(&self.num, &other.num.mul(&self.den)), den: self.den.clone() }.fix_zero();
        }
        if self.den.is_one() {
            return Self { num: combine(&self.num.mul(&other.den), &other.num), den: other.den.clone() }.fix_zero();
        }
        // Henrici: with g = gcd(b, d), b = g·b' and d = g·d', the sum
        // a/b + c/d = (a·d' + c·b') / (g·b'·d'), and the only factors the
        // numerator can share with the denominator are those of g.
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = combine(&self.num.mul(&other.den), &other.num.mul(&self.den));
            return Self::make_monic(num, self.den.mul(&other.den)).fix_zero();
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = other.den.exact_div(&g).expect("gcd divides");
        let t = combine(&self.num.mul(&d1), &other.num.mul(&b1));
        if t.is_zero() {
            return Self::zero(self.nvars().max(other.nvars()));
        }
        let h = gcd(&t, &g);
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (t.exact_div(&h).expect("gcd divides"), g.exact_div(&h).expect("gcd divides"))
        };
        Self::make_monic(t, g.mul(&b1).mul(&d1))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars().max(other.nvars()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // Cross-cancel: inputs are reduced, so the product of the reduced
        // pieces is reduced too.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let div = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.exact_div(g).expect("gcd divides") };
        let num = div(&self.num, &g1).mul(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&other.den, &g1));
        Self::make_monic(num, den)
    }
}

impl fmt::Display for ScalarExpr {
    /// Renders with generic variable names `x0, x1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                $body(self, rhs)
            }
        }
        impl $trait<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                $body(&self, &rhs)
            }
        }
        impl $trait<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                $body(&self, rhs)
            }
        }
        impl $trait<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &ScalarExpr, b: &ScalarExpr| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &ScalarExpr, b: &ScalarExpr| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &ScalarExpr, b: &ScalarExpr| a.mul_impl(b));

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> ScalarExpr {
        ScalarExpr::var(0, 2)
    }
    fn y() -> ScalarExpr {
        ScalarExpr::var(1, 2)
    }
    fn one() -> ScalarExpr {
        ScalarExpr::one(2)
    }

    #[test]
    fn add_inverse_is_zero() {
        assert!((x() + (-x())).is_zero());
    }

    #[test]
    fn reciprocal_times_value_is_one() {
        let f = x() + one();
        assert!((f.inv().unwrap() * &f).is_one());
    }

    #[test]
    fn division_cancels_factorization() {
        let q = (x() * x() - y() * y()).checked_div(&(x() - y())).unwrap();
        assert_eq!(q, x() + y());
        assert!(q.is_polynomial());
    }

    #[test]
    fn division_by_zero_fails() {
        assert_eq!(x().checked_div(&ScalarExpr::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!((x() * x() * y()).partial(0), ScalarExpr::int(2, 2) * x() * y());
        let inv_x = x().inv().unwrap();
        assert_eq!(inv_x.partial(0), -(x() * x()).inv().unwrap());
        assert!(x().partial(1).is_zero());
    }

    #[test]
    fn partial_keeps_canonical_form_with_factors_free_of_the_variable() {
        // ∂/∂x of (1 + x y) / (y (x + 1)²): y survives in the denominator
        // while the numerator y − 2 − x y keeps no factor in common with it.
        let f = (one() + x() * y()).checked_div(&(y() * (x() + one()) * (x() + one()))).unwrap();
        let expected = (y() - ScalarExpr::int(2, 2) - x() * y()).checked_div(&(y() * (x() + one()).pow(3))).unwrap();
        assert_eq!(f.partial(0), expected);
        // ∂/∂x of (1 + x y) / y is 1: the content y cancels entirely.
        let g = (one() + x() * y()).checked_div(&y()).unwrap();
        assert_eq!(g.partial(0), one());
    }

    #[test]
    fn denominator_is_monic() {
        let e = x().checked_div(&(ScalarExpr::int(2, 2) * y() + ScalarExpr::int(4, 2))).unwrap();
        assert!(e.denominator().leading_coeff().unwrap().is_one());
        assert_eq!(e.numerator(), &x().scale(&GaussianRational::from_ratio(1, 2)).numerator().clone());
    }

    #[test]
    fn evaluation_and_poles() {
        let p = [GaussianRational::from_int(1), GaussianRational::from_int(0)];
        let f = (x() - one()).inv().unwrap();
        assert_eq!(f.eval(&p), Err(Error::Pole));
        let q = [GaussianRational::from_int(1), GaussianRational::from_int(2)];
        assert_eq!((x() + y()).eval(&q).unwrap(), GaussianRational::from_int(3));
    }
}
