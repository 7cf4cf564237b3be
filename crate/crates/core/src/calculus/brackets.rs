//! Richardson–Nijenhuis and Frölicher–Nijenhuis brackets, and the
//! Nijenhuis torsion of an endomorphism.

use super::chart::Chart;
use super::field::VectorField;
use super::form::KForm;
use super::operators::{insertion, lie_derivative, retarget};
use super::vvf::VectorValuedForm;
use crate::error::{Error, Result};

fn sign_combine(a: KForm, b: KForm, odd: bool) -> Result<KForm> {
    if odd {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// `[A, B]_RN`, the vector-valued form with `ι_{[A,B]_RN} = [ι_A, ι_B]`.
/// Its degree is `deg A + deg B − 1`.
pub fn rn_bracket(a: &VectorValuedForm, b: &VectorValuedForm) -> Result<VectorValuedForm> {
    let chart = a.chart();
    chart.check_same(b.chart())?;
    if a.degree() + b.degree() == 0 {
        return Err(Error::Shape("the RN bracket of two vector fields has negative degree".into()));
    }
    let deg = a.degree() + b.degree() - 1;
    let odd = ((a.degree() as isize - 1) * (b.degree() as isize - 1)).rem_euclid(2) == 1;
    let mut comps = Vec::with_capacity(chart.dim());
    for j in 0..chart.dim() {
        let dxj = KForm::differential(chart, j);
        let ab = retarget(insertion(a, &insertion(b, &dxj)?)?, deg)?;
        let ba = retarget(insertion(b, &insertion(a, &dxj)?)?, deg)?;
        comps.push(sign_combine(ab, ba, odd)?);
    }
    VectorValuedForm::from_components(chart, comps)
}

/// `[A, B]_FN`, the vector-valued form with `𝓛_{[A,B]_FN} = [𝓛_A, 𝓛_B]`.
/// Its degree is `deg A + deg B`.
pub fn fn_bracket(a: &VectorValuedForm, b: &VectorValuedForm) -> Result<VectorValuedForm> {
    let chart = a.chart();
    chart.check_same(b.chart())?;
    let deg = a.degree() + b.degree();
    let odd = (a.degree() * b.degree()) % 2 == 1;
    let mut comps = Vec::with_capacity(chart.dim());
    for j in 0..chart.dim() {
        // 𝓛_B x^j = B^j
        let ab = retarget(lie_derivative(a, b.component(j))?, deg)?;
        let ba = retarget(lie_derivative(b, a.component(j))?, deg)?;
        comps.push(sign_combine(ab, ba, odd)?);
    }
    VectorValuedForm::from_components(chart, comps)
}

/// `T_N(X, Y) = [NX, NY] − N[NX, Y] − N[X, NY] + N²[X, Y]`, computed on
/// coordinate fields.
pub fn nijenhuis_torsion(n: &VectorValuedForm) -> Result<VectorValuedForm> {
    let chart = n.chart();
    let cols: Vec<VectorField> =
        (0..chart.dim()).map(|j| n.apply(&VectorField::basis(chart, j))).collect::<Result<_>>()?;
    VectorValuedForm::from_basis_values(chart, 2, |idx| {
        let (a, b) = (idx[0], idx[1]);
        let ea = VectorField::basis(chart, a);
        let eb = VectorField::basis(chart, b);
        let t = cols[a].lie_bracket(&cols[b])?;
        let inner = cols[a].lie_bracket(&eb)?.add(&ea.lie_bracket(&cols[b])?)?;
        t.sub(&n.apply(&inner)?)
    })
}

/// Deformed bracket `[X, Y]_K = [KX, Y] + [X, KY] − K[X, Y]`.
pub fn contracted_bracket(k: &VectorValuedForm, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    let kx = k.apply(x)?;
    let ky = k.apply(y)?;
    kx.lie_bracket(y)?.add(&x.lie_bracket(&ky)?)?.sub(&k.apply(&x.lie_bracket(y)?)?)
}

/// The bilinear map `(X, Y) ↦ [X, Y]_K` as a vector-valued 2-form is not
/// tensorial, so callers evaluate it on coordinate fields; this returns the
/// table `[∂_a, ∂_b]_K` for `a < b`.
pub fn contracted_bracket_table(k: &VectorValuedForm) -> Result<Vec<((usize, usize), VectorField)>> {
    let chart: &Chart = k.chart();
    let n = chart.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let v = contracted_bracket(k, &VectorField::basis(chart, a), &VectorField::basis(chart, b))?;
            out.push(((a, b), v));
        }
    }
    Ok(out)
}

/// Lie derivative of a vector-valued form along a vector field,
/// `𝓛_X K = [X, K]_FN`.
pub fn lie_derivative_along(x: &VectorField, k: &VectorValuedForm) -> Result<VectorValuedForm> {
    fn_bracket(&VectorValuedForm::from_field(x), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n0() -> VectorValuedForm {
        let c = Chart::new(&["x", "y", "z", "w"]).unwrap();
        VectorValuedForm::parse_matrix(
            &c,
            &[vec!["1", "0", "0", "-z"], vec!["0", "1", "0", "0"], vec!["0", "0", "0", "0"], vec!["0", "0", "0", "0"]],
        )
        .unwrap()
    }

    #[test]
    fn torsion_of_idempotent_example() {
        let n = n0();
        let c = n.chart().clone();
        let t = nijenhuis_torsion(&n).unwrap();
        assert_eq!(t.value_on_basis(&[2, 3]), VectorField::basis(&c, 0));
        assert_eq!(t.nonzero_values().len(), 1);
    }

    #[test]
    fn half_self_bracket_is_torsion() {
        let n = n0();
        let half = n.chart().parse("1/2").unwrap();
        assert_eq!(fn_bracket(&n, &n).unwrap().scale(&half), nijenhuis_torsion(&n).unwrap());
    }

    #[test]
    fn fn_bracket_of_fields_is_lie_bracket() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let x = VectorField::parse(&c, &["y", "x^2"]).unwrap();
        let y = VectorField::parse(&c, &["1", "x*y"]).unwrap();
        let b = fn_bracket(&VectorValuedForm::from_field(&x), &VectorValuedForm::from_field(&y)).unwrap();
        assert_eq!(b.as_field().unwrap(), x.lie_bracket(&y).unwrap());
    }

    #[test]
    fn rn_bracket_of_field_with_endomorphism() {
        // [X, N]_RN = ι_X N = N X
        let n = n0();
        let c = n.chart().clone();
        let x = VectorField::basis(&c, 3);
        let b = rn_bracket(&VectorValuedForm::from_field(&x), &n).unwrap();
        assert_eq!(b.degree(), 0);
        assert_eq!(b.as_field().unwrap(), n.apply(&x).unwrap());
    }

    #[test]
    fn identity_is_central_for_fn_bracket() {
        let n = n0();
        let id = VectorValuedForm::identity(n.chart());
        assert!(fn_bracket(&id, &n).unwrap().is_zero());
    }
}
