use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tangent::{algebroid_bracket, TangentAlgebroid};
use super::Residual;
use crate::calculus::random::random_field;
use crate::calculus::{contracted_bracket, nijenhuis_torsion, VectorField, VectorValuedForm};
use crate::error::Result;

/// For invertible `K`, the only correction making `𝓛_K + ι_L` square to zero:
/// `L = −K⁻¹ T_K`.
pub fn invertible_algebroid(k: &VectorValuedForm) -> Result<TangentAlgebroid> {
    let inv = k.inverse()?;
    let l = inv.compose(&nijenhuis_torsion(k)?)?.neg();
    TangentAlgebroid::new(k.clone(), l)
}

fn probe_fields(k: &VectorValuedForm, probe_degree: u32, seed: u64) -> Vec<(String, VectorField)> {
    let chart = k.chart();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, VectorField)> =
        (0..chart.dim()).map(|a| (chart.basis_label(a), VectorField::basis(chart, a))).collect();
    out.extend((0..2).map(|q| (format!("X{}", q + 1), random_field(chart, probe_degree, &mut rng))));
    out
}

fn pairs(fields: &[(String, VectorField)]) -> impl Iterator<Item = (&(String, VectorField), &(String, VectorField))> {
    fields.iter().enumerate().flat_map(move |(a, x)| fields[a + 1..].iter().map(move |y| (x, y)))
}

/// `[X, Y]_K + K⁻¹T_K(X, Y) − K⁻¹[KX, KY]` on coordinate and random fields.
pub fn inverse_bracket_residuals(
    k: &VectorValuedForm,
    probe_degree: u32,
    seed: u64,
) -> Result<Vec<Residual<VectorField>>> {
    let inv = k.inverse()?;
    let t = nijenhuis_torsion(k)?;
    let mut out = Vec::new();
    for ((la, x), (lb, y)) in pairs(&probe_fields(k, probe_degree, seed)) {
        let lhs = contracted_bracket(k, x, y)?.add(&inv.apply(&t.eval(&[x.clone(), y.clone()])?)?)?;
        let rhs = inv.apply(&k.apply(x)?.lie_bracket(&k.apply(y)?)?)?;
        out.push(Residual::new("inverse bracket", vec![la.clone(), lb.clone()], lhs.sub(&rhs)?));
    }
    Ok(out)
}

/// `φ[X, Y] − [[φX, φY]]` with `φ = K⁻¹`, showing that `φ` identifies the
/// Lie algebra of vector fields with the algebroid bracket.
pub fn verify_trivial_isomorphism(
    alg: &TangentAlgebroid,
    probe_degree: u32,
    seed: u64,
) -> Result<Vec<Residual<VectorField>>> {
    let phi = alg.anchor().inverse()?;
    let mut out = Vec::new();
    for ((la, x), (lb, y)) in pairs(&probe_fields(alg.anchor(), probe_degree, seed)) {
        let lhs = phi.apply(&x.lie_bracket(y)?)?;
        let rhs = algebroid_bracket(alg, &phi.apply(x)?, &phi.apply(y)?)?;
        out.push(Residual::new("isomorphism", vec![la.clone(), lb.clone()], lhs.sub(&rhs)?));
    }
    Ok(out)
}
