use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tangent::{algebroid_bracket, TangentAlgebroid};
use super::{all_vanish, Residual};
use crate::calculus::random::{random_field, random_function};
use crate::calculus::VectorField;
use crate::error::Result;
use crate::scalar::ScalarExpr;

/// Residuals of the Lie algebroid axioms, each a vector field that must be
/// identically zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    /// `[[X, fY]] − f[[X, Y]] − (KX f) Y`.
    pub leibniz: Vec<Residual<VectorField>>,
    /// `[[X, [[Y, Z]]]] + [[Y, [[Z, X]]]] + [[Z, [[X, Y]]]]`.
    pub jacobi: Vec<Residual<VectorField>>,
    /// `K[[X, Y]] − [KX, KY]`.
    pub anchor_morphism: Vec<Residual<VectorField>>,
    /// `[[X, Y]] + [[Y, X]]`.
    pub antisymmetry: Vec<Residual<VectorField>>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        all_vanish(&self.leibniz)
            && all_vanish(&self.jacobi)
            && all_vanish(&self.anchor_morphism)
            && all_vanish(&self.antisymmetry)
    }
}

const RANDOM_TRIPLES: usize = 2;

/// Checks every algebroid axiom on coordinate fields and on random
/// polynomial fields of degree `probe_degree` drawn from `seed`.
///
/// The Leibniz residual is linear in the 1-jet of `f`, so testing
/// `f ∈ {1, x^i}` on coordinate fields is exact; a random polynomial `f` and
/// random fields are added on top. Once Leibniz and antisymmetry hold, the
/// Jacobiator is tensorial, so coordinate triples decide it; random triples
/// are a further guard.
pub fn check_axioms(alg: &TangentAlgebroid, probe_degree: u32, seed: u64) -> Result<AxiomReport> {
    let chart = alg.chart();
    let n = chart.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fields: Vec<(String, VectorField)> =
        (0..n).map(|a| (chart.basis_label(a), VectorField::basis(chart, a))).collect();
    let random: Vec<(String, VectorField)> =
        (0..3 * RANDOM_TRIPLES).map(|q| (format!("X{}", q + 1), random_field(chart, probe_degree, &mut rng))).collect();
    let mut functions: Vec<(String, ScalarExpr)> = vec![("1".into(), chart.one())];
    functions.extend((0..n).map(|i| (chart.names()[i].clone(), chart.coordinate(i))));
    let f_rand = random_function(chart, probe_degree.max(1), &mut rng);
    functions.push((format!("f = {}", chart.render(&f_rand)), f_rand));

    let k = alg.anchor();
    let br = |x: &VectorField, y: &VectorField| algebroid_bracket(alg, x, y);
    let label = |items: &[&str]| items.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let mut leibniz = Vec::new();
    let mut antisymmetry = Vec::new();
    let mut anchor_morphism = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    for &(a, b) in &pairs {
        let (la, x) = &fields[a];
        let (lb, y) = &fields[b];
        let xy = br(x, y)?;
        let kx = k.apply(x)?;
        for (lf, f) in &functions {
            let r = br(x, &y.scale(f))?.sub(&xy.scale(f))?.sub(&y.scale(&kx.apply(f)))?;
            leibniz.push(Residual::new("leibniz", label(&[la, lf, lb]), r));
        }
        if a < b {
            antisymmetry.push(Residual::new("antisymmetry", label(&[la, lb]), xy.add(&br(y, x)?)?));
            let r = k.apply(&xy)?.sub(&kx.lie_bracket(&k.apply(y)?)?)?;
            anchor_morphism.push(Residual::new("anchor", label(&[la, lb]), r));
        }
    }
    for pair in random.chunks(2).take(RANDOM_TRIPLES) {
        let (la, x) = &pair[0];
        let (lb, y) = &pair[1];
        let xy = br(x, y)?;
        let (lf, f) = functions.last().expect("random function present");
        let r = br(x, &y.scale(f))?.sub(&xy.scale(f))?.sub(&y.scale(&k.apply(x)?.apply(f)))?;
        leibniz.push(Residual::new("leibniz", label(&[la, lf, lb]), r));
        antisymmetry.push(Residual::new("antisymmetry", label(&[la, lb]), xy.add(&br(y, x)?)?));
        let r = k.apply(&xy)?.sub(&k.apply(x)?.lie_bracket(&k.apply(y)?)?)?;
        anchor_morphism.push(Residual::new("anchor", label(&[la, lb]), r));
    }

    let jac = |x: &VectorField, y: &VectorField, z: &VectorField| -> Result<VectorField> {
        br(x, &br(y, z)?)?.add(&br(y, &br(z, x)?)?)?.add(&br(z, &br(x, y)?)?)
    };
    let mut jacobi = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let r = jac(&fields[a].1, &fields[b].1, &fields[c].1)?;
                jacobi.push(Residual::new("jacobi", label(&[&fields[a].0, &fields[b].0, &fields[c].0]), r));
            }
        }
    }
    fields.extend(random);
    for t in fields[n..].chunks(3) {
        let r = jac(&t[0].1, &t[1].1, &t[2].1)?;
        jacobi.push(Residual::new("jacobi", label(&[&t[0].0, &t[1].0, &t[2].0]), r));
    }
    Ok(AxiomReport { leibniz, jacobi, anchor_morphism, antisymmetry })
}
