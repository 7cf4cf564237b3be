//! Sparse storage for alternating multilinear coefficients, shared by
//! differential forms and bundle forms.

use std::collections::BTreeMap;

use crate::scalar::ScalarExpr;

/// Strictly increasing 0-based index list.
pub type MultiIndex = Vec<usize>;

/// All strictly increasing `k`-element subsets of `0..n`, in lex order.
pub fn increasing(n: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Sorts `indices`, returning the sign of the sorting permutation, or `None`
/// when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(i64, MultiIndex)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for a in 1..v.len() {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            v.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

/// Splits `0..n` into `(picked, rest)` for every `k`-subset `picked`,
/// together with the sign of the shuffle permutation `picked ++ rest`.
pub fn shuffles(n: usize, k: usize) -> Vec<(i64, Vec<usize>, Vec<usize>)> {
    increasing(n, k)
        .into_iter()
        .map(|picked| {
            let rest: Vec<usize> = (0..n).filter(|v| !picked.contains(v)).collect();
            // inversions: pairs (p in picked, r in rest) with p > r
            let inv: usize = picked.iter().enumerate().map(|(pos, &p)| p - pos).sum();
            let sign = if inv.is_multiple_of(2) { 1 } else { -1 };
            (sign, picked, rest)
        })
        .collect()
}

/// Coefficients `c_I` on strictly increasing multi-indices of a fixed length.
/// Absent entries are zero; stored entries are never zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alternating {
    degree: usize,
    nvars: usize,
    coeffs: BTreeMap<MultiIndex, ScalarExpr>,
}

impl Alternating {
    pub fn zero(degree: usize, nvars: usize) -> Self {
        Self { degree, nvars, coeffs: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at an increasing multi-index.
    pub fn get(&self, index: &[usize]) -> ScalarExpr {
        self.coeffs.get(index).cloned().unwrap_or_else(|| ScalarExpr::zero(self.nvars))
    }

    /// Coefficient at an arbitrary index list, with the alternating sign.
    pub fn get_unsorted(&self, index: &[usize]) -> ScalarExpr {
        match sort_with_sign(index) {
            None => ScalarExpr::zero(self.nvars),
            Some((s, sorted)) => {
                let c = self.get(&sorted);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Adds `c` at an arbitrary index list, applying the alternating sign.
    pub fn add_at(&mut self, index: &[usize], c: &ScalarExpr) {
        debug_assert_eq!(index.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let Some((s, sorted)) = sort_with_sign(index) else { return };
        let c = if s < 0 { -c } else { c.clone() };
        match self.coeffs.get_mut(&sorted) {
            Some(slot) => {
                let v = &*slot + &c;
                if v.is_zero() {
                    self.coeffs.remove(&sorted);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.coeffs.insert(sorted, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_at(k, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        if f.is_zero() {
            return Self::zero(self.degree, self.nvars);
        }
        Self {
            degree: self.degree,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * f)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = Self::zero(self.degree, self.nvars);
        for (k, v) in &self.coeffs {
            out.add_at(k, &f(v));
        }
        out
    }

    /// `(α ∧ β)_K = Σ sign · α_I β_J` over disjoint `I ∪ J = K`.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree, self.nvars);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_at(&idx, &(a * b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(increasing(4, 2).len(), 6);
        assert_eq!(increasing(3, 0), vec![Vec::<usize>::new()]);
        assert!(increasing(2, 3).is_empty());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(sort_with_sign(&[1, 0]), Some((-1, vec![0, 1])));
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn shuffle_signs_match_sorting() {
        for (s, picked, rest) in shuffles(5, 2) {
            let mut all = picked.clone();
            all.extend(rest);
            assert_eq!(sort_with_sign(&all).unwrap().0, s);
        }
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let one = ScalarExpr::one(3);
        let mut a = Alternating::zero(1, 3);
        a.add_at(&[0], &one);
        let mut b = Alternating::zero(1, 3);
        b.add_at(&[2], &one);
        assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        assert!(a.wedge(&a).is_zero());
    }
}
