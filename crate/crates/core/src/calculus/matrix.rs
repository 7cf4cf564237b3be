//! Dense linear algebra over rational functions, sized for charts of small
//! dimension.

use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

fn nvars_of(m: &[Vec<ScalarExpr>]) -> usize {
    m.iter().flatten().map(ScalarExpr::nvars).max().unwrap_or(0)
}

fn minor(m: &[Vec<ScalarExpr>], skip_row: usize, skip_col: usize) -> Vec<Vec<ScalarExpr>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != skip_col).map(|(_, v)| v.clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row, skipping zeros.
pub fn det(m: &[Vec<ScalarExpr>]) -> ScalarExpr {
    let n = m.len();
    let nv = nvars_of(m);
    match n {
        0 => ScalarExpr::one(nv),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = ScalarExpr::zero(nv);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let term = &m[0][c] * &det(&minor(m, 0, c));
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Inverse via the adjugate; fails when the determinant is the zero
/// function.
pub fn inverse(m: &[Vec<ScalarExpr>]) -> Result<Vec<Vec<ScalarExpr>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let d = det(m);
    if d.is_zero() {
        return Err(Error::SingularAnchor);
    }
    let dinv = d.inv()?;
    if n == 1 {
        return Ok(vec![vec![dinv]]);
    }
    let mut out = vec![vec![ScalarExpr::zero(nvars_of(m)); n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            // adj[r][c] = (-1)^{r+c} det(minor without row c, col r)
            let cof = det(&minor(m, c, r)) * &dinv;
            *slot = if (r + c) % 2 == 0 { cof } else { -cof };
        }
    }
    Ok(out)
}

pub fn mul(a: &[Vec<ScalarExpr>], b: &[Vec<ScalarExpr>]) -> Vec<Vec<ScalarExpr>> {
    let nv = nvars_of(a).max(nvars_of(b));
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = ScalarExpr::zero(nv);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][c].is_zero() {
                            acc = acc + &row[k] * &b[k][c];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Greedy choice of linearly independent columns, scanning left to right.
/// Returns the indices of the chosen columns.
pub fn independent_columns(columns: &[Vec<ScalarExpr>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<ScalarExpr>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        for (pivot, b) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].checked_div(&b[*pivot]).expect("pivot is nonzero");
            for (vi, bi) in v.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *vi = &*vi - &(&factor * bi);
                }
            }
        }
        if let Some(pivot) = v.iter().position(|e| !e.is_zero()) {
            basis.push((pivot, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Rank over the field of rational functions.
pub fn rank(m: &[Vec<ScalarExpr>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let columns: Vec<Vec<ScalarExpr>> = (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect();
    independent_columns(&columns).len()
}
