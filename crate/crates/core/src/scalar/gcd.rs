//! Multivariate gcd over ℚ(i) by recursive subresultant pseudo-remainder
//! sequences.
//!
//! A polynomial is viewed as univariate in its first occurring variable with
//! coefficients in the remaining ones. Contents are computed recursively, so
//! the recursion bottoms out at constants, where the gcd is 1.

use super::poly::Poly;
use super::GaussianRational;

/// Monic gcd (leading grlex coefficient 1). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_inner(a, b).monic()
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let nvars = a.nvars().max(b.nvars());
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    if a == b {
        return a.clone();
    }
    // A variable occurring in only one argument cannot occur in the gcd, so
    // the gcd divides every coefficient in that variable. Folding those
    // coefficients into the other argument one at a time keeps the work on
    // small polynomials and stops as soon as the result is constant.
    if let Some(var) = (0..nvars).find(|&v| a.contains_var(v) != b.contains_var(v)) {
        let (with, without) = if a.contains_var(var) { (a, b) } else { (b, a) };
        let mut acc = without.clone();
        for c in with.coeffs_in(var) {
            if c.is_zero() {
                continue;
            }
            acc = gcd_inner(&acc, &c);
            if acc.is_constant() {
                return Poly::one(nvars);
            }
        }
        return acc;
    }
    let var = (0..nvars).find(|&v| a.contains_var(v)).expect("non-constant polynomial has a variable");
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd_inner(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides polynomial");
    let pb = b.exact_div(&cb).expect("content divides polynomial");
    match image_degree(&pa, &pb, var) {
        Some(0) => return c,
        Some(d) => {
            // The image degree bounds the gcd degree, so when it matches the
            // smaller argument that argument is the only candidate.
            let (small, large) = if pa.degree_in(var) <= pb.degree_in(var) { (&pa, &pb) } else { (&pb, &pa) };
            if d == small.degree_in(var) && large.exact_div(small).is_some() {
                return c.mul(small);
            }
        }
        None => {}
    }
    c.mul(&primitive_prs(pa, pb, var))
}

/// Degree in `var` of the gcd of the images of `a` and `b` after every other
/// variable is fixed at an integer point where both leading coefficients in
/// `var` survive. It bounds the degree of the true gcd from above. `None`
/// when no tried point keeps both leading coefficients.
fn image_degree(a: &Poly, b: &Poly, var: usize) -> Option<u32> {
    (0..4i64).find_map(|attempt| {
        let point: Vec<GaussianRational> =
            (0..a.nvars()).map(|v| GaussianRational::from_int(2 + 3 * v as i64 + 5 * attempt)).collect();
        let ia = specialize(a, var, &point);
        let ib = specialize(b, var, &point);
        if ia.len() as u32 != a.degree_in(var) + 1 || ib.len() as u32 != b.degree_in(var) + 1 {
            return None;
        }
        Some(univariate_gcd(ia, ib).len() as u32 - 1)
    })
}

/// Coefficients in `var` (lowest first, trailing zeros trimmed) after the
/// other variables take the values in `point`.
fn specialize(p: &Poly, var: usize, point: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); p.degree_in(var) as usize + 1];
    for (e, c) in p.terms() {
        let mut value = c.clone();
        for (v, &k) in e.iter().enumerate() {
            if v != var && k > 0 {
                value = &value * &point[v].pow(k);
            }
        }
        out[e[var] as usize] += &value;
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<GaussianRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Euclid over ℚ(i) on dense coefficient vectors; both inputs nonzero.
fn univariate_gcd(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Vec<GaussianRational> {
    while !b.is_empty() {
        let lead = b.last().unwrap().inv().expect("trimmed leading coefficient is nonzero");
        while a.len() >= b.len() {
            let q = &a[a.len() - 1] * &lead;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let t = &q * c;
                a[shift + i] -= &t;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, &c);
        if acc.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    acc.monic()
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    p.exact_div(&c).expect("content divides polynomial")
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b` in `var`.
fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = b.degree_in(var);
    if n == 0 {
        return Poly::zero(a.nvars());
    }
    let lb = b.coeff_in(var, n);
    let mut steps = a.degree_in(var) + 1 - n;
    let mut r = a.clone();
    while !r.is_zero() && r.contains_var(var) && r.degree_in(var) >= n {
        let d = r.degree_in(var);
        let lr = r.coeff_in(var, d);
        let mut shift = vec![0; r.nvars()];
        shift[var] = d - n;
        let sub = b.mul(&lr).mul_term(&shift, &GaussianRational::one());
        r = r.mul(&lb).sub(&sub);
        steps -= 1;
    }
    if steps > 0 {
        r = r.mul(&lb.pow(steps));
    }
    r
}

/// gcd of two primitive polynomials in `var`, by the subresultant
/// remainder sequence. The divisions by `g·h^δ` keep coefficient growth in
/// the other variables linear, and a single primitive part at the end
/// replaces the content computation a primitive sequence needs each step.
fn primitive_prs(mut a: Poly, mut b: Poly, var: usize) -> Poly {
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    let nvars = a.nvars();
    let mut g = Poly::one(nvars);
    let mut h = Poly::one(nvars);
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if !r.contains_var(var) {
            return Poly::one(nvars);
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.coeff_in(var, a.degree_in(var));
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}
