//! The reference endomorphisms used throughout the tests, the CLI fixtures
//! and the guide. Each is given by the images of the coordinate fields.

use crate::calculus::{Chart, VectorField, VectorValuedForm};

fn endo(names: &[&str], images: &[&[&str]]) -> VectorValuedForm {
    let chart = Chart::new(names).expect("fixture chart is valid");
    let columns: Vec<VectorField> =
        images.iter().map(|img| VectorField::parse(&chart, img).expect("fixture field parses")).collect();
    VectorValuedForm::from_columns(&chart, &columns).expect("fixture columns fit the chart")
}

/// `∂x ↦ ∂y`, `∂y ↦ −∂x` on `(x, y)`.
pub fn j0() -> VectorValuedForm {
    endo(&["x", "y"], &[&["0", "1"], &["-1", "0"]])
}

/// `∂x ↦ (1 + x²)∂y`, `∂y ↦ −(1 + x²)⁻¹∂x` on `(x, y)`.
pub fn j1() -> VectorValuedForm {
    endo(&["x", "y"], &[&["0", "1 + x^2"], &["-1/(1 + x^2)", "0"]])
}

/// `∂x ↦ ∂x`, `∂y ↦ ∂y`, `∂z ↦ 0`, `∂w ↦ −z∂x` on `(x, y, z, w)`.
pub fn n0() -> VectorValuedForm {
    endo(
        &["x", "y", "z", "w"],
        &[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "0", "0"], &["-z", "0", "0", "0"]],
    )
}

/// `∂x ↦ ∂x`, `∂y ↦ −∂y` on `(x, y)`.
pub fn p0() -> VectorValuedForm {
    endo(&["x", "y"], &[&["1", "0"], &["0", "-1"]])
}

/// `∂x ↦ ∂x + 2y∂y`, `∂y ↦ −∂y` on `(x, y)`.
pub fn p1() -> VectorValuedForm {
    endo(&["x", "y"], &[&["1", "2*y"], &["0", "-1"]])
}

/// `∂x ↦ 0`, `∂y ↦ −x∂z`, `∂z ↦ ∂z` on `(x, y, z)`: a connection for the
/// foliation by `z`-lines whose horizontal distribution is not integrable.
pub fn gamma0() -> VectorValuedForm {
    endo(&["x", "y", "z"], &[&["0", "0", "0"], &["0", "0", "-x"], &["0", "0", "1"]])
}

/// `∂x, ∂y ↦ 0`, `∂z ↦ ∂z` on `(x, y, z)`: the flat connection.
pub fn gamma_flat() -> VectorValuedForm {
    endo(&["x", "y", "z"], &[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "1"]])
}

/// `∂x ↦ ∂y`, `∂y ↦ −∂x`, `∂z ↦ ∂w + x∂y`, `∂w ↦ −∂z + x∂x` on
/// `(x, y, z, w)`: almost complex but not integrable.
pub fn j2() -> VectorValuedForm {
    endo(
        &["x", "y", "z", "w"],
        &[&["0", "1", "0", "0"], &["-1", "0", "0", "0"], &["0", "x", "0", "1"], &["x", "0", "-1", "0"]],
    )
}

/// `∂x ↦ ∂x`, `∂y ↦ ∂y + x∂z`, `∂z ↦ 0` on `(x, y, z)`: idempotent with a
/// non-involutive image.
pub fn non_involutive() -> VectorValuedForm {
    endo(&["x", "y", "z"], &[&["1", "0", "0"], &["0", "1", "x"], &["0", "0", "0"]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        let minus = |k: &VectorValuedForm| VectorValuedForm::identity(k.chart()).neg();
        for j in [j0(), j1(), j2()] {
            assert_eq!(j.compose(&j).unwrap(), minus(&j));
        }
        for p in [p0(), p1()] {
            assert_eq!(p.compose(&p).unwrap(), VectorValuedForm::identity(p.chart()));
        }
        for n in [n0(), gamma0(), gamma_flat(), non_involutive()] {
            assert_eq!(n.compose(&n).unwrap(), n);
        }
    }
}
