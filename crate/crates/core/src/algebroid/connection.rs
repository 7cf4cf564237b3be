//! Linear connections on the bundle of an algebroid, the induced operator
//! `∇_q` on `E`-forms, and the torsion `L^∇` of the `E`-connection
//! `δ^∇_A B = ∇_{qA} B`.

use super::bundle::{bundle_de_rham, BundleAlgebroid, EForm, ESection};
use super::tangent::TangentAlgebroid;
use super::Residual;
use crate::calculus::{contracted_bracket, Chart, VectorField};
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// `∇_{∂_i} s_a = Σ_b Γ_{ia}^b s_b`. On `E*` the connection acts by duality:
/// `(∇_{∂_i} α)_b = ∂_i α_b − Σ_d Γ_{ib}^d α_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearConnection {
    chart: Chart,
    rank: usize,
    gamma: Vec<Vec<Vec<ScalarExpr>>>,
}

impl LinearConnection {
    /// `gamma[i][a][b] = Γ_{ia}^b`.
    pub fn new(chart: &Chart, rank: usize, gamma: Vec<Vec<Vec<ScalarExpr>>>) -> Result<Self> {
        let m = chart.dim();
        if gamma.len() != m || gamma.iter().any(|g| g.len() != rank || g.iter().any(|h| h.len() != rank)) {
            return Err(Error::Shape(format!("Christoffel symbols must be {m}×{rank}×{rank}")));
        }
        for e in gamma.iter().flatten().flatten() {
            chart.admit(e)?;
        }
        Ok(Self { chart: chart.clone(), rank, gamma })
    }

    pub fn flat(chart: &Chart, rank: usize) -> Self {
        Self { chart: chart.clone(), rank, gamma: vec![vec![vec![chart.zero(); rank]; rank]; chart.dim()] }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn christoffel(&self, i: usize, a: usize, b: usize) -> &ScalarExpr {
        &self.gamma[i][a][b]
    }

    /// For a connection on `TM` (rank equal to the dimension):
    /// `Γ_{ia}^b = Γ_{ai}^b`.
    pub fn is_symmetric(&self) -> bool {
        let m = self.chart.dim();
        self.rank == m && (0..m).all(|i| (0..m).all(|a| (0..m).all(|b| self.gamma[i][a][b] == self.gamma[a][i][b])))
    }

    /// `∇_X A`.
    pub fn covariant_derivative(&self, x: &VectorField, s: &ESection) -> Result<ESection> {
        self.chart.check_same(x.chart())?;
        let m = self.chart.dim();
        let comps = (0..self.rank)
            .map(|b| {
                let mut acc = x.apply(s.component(b));
                for i in 0..m {
                    if x.component(i).is_zero() {
                        continue;
                    }
                    for a in 0..self.rank {
                        let g = &self.gamma[i][a][b];
                        if !g.is_zero() && !s.component(a).is_zero() {
                            acc = acc + &(x.component(i) * s.component(a)) * g;
                        }
                    }
                }
                acc
            })
            .collect();
        ESection::new(&self.chart, comps)
    }

    /// `(∇_{∂_j} α)_b` for an `E`-1-form `α`.
    fn dual_derivative(&self, j: usize, alpha: &EForm) -> Vec<ScalarExpr> {
        (0..self.rank)
            .map(|b| {
                let mut acc = alpha.coeff(&[b]).partial(j);
                for d in 0..self.rank {
                    let g = &self.gamma[j][b][d];
                    if !g.is_zero() {
                        acc = acc - g * &alpha.coeff(&[d]);
                    }
                }
                acc
            })
            .collect()
    }
}

fn check_inputs(conn: &LinearConnection, k: &[Vec<ScalarExpr>], alpha: &EForm) -> Result<()> {
    conn.chart.check_same(alpha.chart())?;
    if alpha.degree() != 1 || alpha.rank() != conn.rank {
        return Err(Error::Shape("∇_K acts on E-1-forms of the connection's rank".into()));
    }
    if k.len() != conn.rank || k.iter().any(|row| row.len() != conn.chart.dim()) {
        return Err(Error::Shape("bundle map must be rank × dimension".into()));
    }
    Ok(())
}

/// `(∇_K α)(s_a, s_b) = Σ_j (K_a^j (∇_j α)_b − K_b^j (∇_j α)_a)` for a bundle
/// map `K: E → TM` given by `k[a][j] = K_a^j`.
pub fn nabla_k(conn: &LinearConnection, k: &[Vec<ScalarExpr>], alpha: &EForm) -> Result<EForm> {
    check_inputs(conn, k, alpha)?;
    let m = conn.chart.dim();
    let r = conn.rank;
    let nabla: Vec<Vec<ScalarExpr>> = (0..m).map(|j| conn.dual_derivative(j, alpha)).collect();
    let mut entries = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let mut acc = conn.chart.zero();
            for j in 0..m {
                acc = acc + &k[a][j] * &nabla[j][b] - &k[b][j] * &nabla[j][a];
            }
            entries.push((vec![a, b], acc));
        }
    }
    EForm::from_coeffs(&conn.chart, r, 2, entries)
}

/// `(∇_K α)(A, B) = KA(α(B)) − α(∇_{KA} B) − KB(α(A)) + α(∇_{KB} A)`
/// evaluated on basis sections.
pub fn nabla_k_direct(conn: &LinearConnection, k: &[Vec<ScalarExpr>], alpha: &EForm) -> Result<EForm> {
    check_inputs(conn, k, alpha)?;
    let chart = &conn.chart;
    let r = conn.rank;
    let basis: Vec<ESection> = (0..r).map(|a| ESection::basis(chart, r, a)).collect();
    let kfield = |a: usize| VectorField::new(chart, k[a].clone());
    let mut entries = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let (ka, kb) = (kfield(a)?, kfield(b)?);
            let (sa, sb) = (&basis[a], &basis[b]);
            let v = ka.apply(&alpha.eval(std::slice::from_ref(sb))?)
                - alpha.eval(&[conn.covariant_derivative(&ka, sb)?])?
                - kb.apply(&alpha.eval(std::slice::from_ref(sa))?)
                + alpha.eval(&[conn.covariant_derivative(&kb, sa)?])?;
            entries.push((vec![a, b], v));
        }
    }
    EForm::from_coeffs(chart, r, 2, entries)
}

/// `L^∇(s_a, s_b) = ∇_{q s_a} s_b − ∇_{q s_b} s_a − [[s_a, s_b]]` for `a < b`.
pub fn delta_torsion(conn: &LinearConnection, balg: &BundleAlgebroid) -> Result<Vec<((usize, usize), ESection)>> {
    conn.chart.check_same(balg.chart())?;
    if conn.rank != balg.rank() {
        return Err(Error::Shape("connection and algebroid have different ranks".into()));
    }
    let r = conn.rank;
    let basis: Vec<ESection> = (0..r).map(|a| ESection::basis(&conn.chart, r, a)).collect();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let v = conn
                .covariant_derivative(&balg.anchor_field(a), &basis[b])?
                .sub(&conn.covariant_derivative(&balg.anchor_field(b), &basis[a])?)?
                .sub(&balg.bracket(&basis[a], &basis[b])?)?;
            out.push(((a, b), v));
        }
    }
    Ok(out)
}

/// `D − (∇_q + ι_{L^∇})` on the generators `x^i` and `η^c`.
pub fn check_connection_decomposition(conn: &LinearConnection, balg: &BundleAlgebroid) -> Result<Vec<Residual<EForm>>> {
    let chart = balg.chart();
    let r = balg.rank();
    let q = balg.anchor_matrix();
    let torsion = delta_torsion(conn, balg)?;
    let mut out = Vec::new();
    for i in 0..chart.dim() {
        let f = EForm::function(chart, r, chart.coordinate(i));
        let d = bundle_de_rham(balg, &f)?;
        // ∇_q f = Σ_a q(s_a)(f) η^a and ι_L kills functions
        let entries = (0..r).map(|a| (vec![a], balg.anchor_field(a).apply(&chart.coordinate(i))));
        let nabla = EForm::from_coeffs(chart, r, 1, entries)?;
        out.push(Residual::new("D = ∇q + ιL", vec![chart.names()[i].clone()], d.sub(&nabla)?));
    }
    for c in 0..r {
        let eta = EForm::eta(chart, r, c);
        let d = bundle_de_rham(balg, &eta)?;
        let nabla = nabla_k(conn, q, &eta)?;
        let iota =
            EForm::from_coeffs(chart, r, 2, torsion.iter().map(|((a, b), v)| (vec![*a, *b], v.component(c).clone())))?;
        out.push(Residual::new("D = ∇q + ιL", vec![format!("η{}", c + 1)], d.sub(&nabla.add(&iota)?)?));
    }
    Ok(out)
}

/// For a symmetric connection on `TM`, compares `L^∇` with
/// `[X, Y]_q + (∇_Y q)X − (∇_X q)Y − [[X, Y]]` on coordinate fields.
/// Returns `None` when the connection is not symmetric, since the identity
/// does not apply.
pub fn symmetric_torsion_crosscheck(
    conn: &LinearConnection,
    alg: &TangentAlgebroid,
) -> Result<Option<Vec<Residual<VectorField>>>> {
    if !conn.is_symmetric() {
        return Ok(None);
    }
    let chart = alg.chart();
    conn.chart.check_same(chart)?;
    let n = chart.dim();
    let balg = BundleAlgebroid::from_tangent(alg)?;
    let torsion = delta_torsion(conn, &balg)?;
    let q = alg.anchor();
    let as_section = |v: &VectorField| ESection::new(chart, v.components().to_vec());
    let as_field = |s: &ESection| VectorField::new(chart, (0..n).map(|i| s.component(i).clone()).collect());
    // (∇_X q)Y = ∇_X(qY) − q(∇_X Y)
    let nabla_q = |x: &VectorField, y: &VectorField| -> Result<VectorField> {
        let a = as_field(&conn.covariant_derivative(x, &as_section(&q.apply(y)?)?)?)?;
        let b = q.apply(&as_field(&conn.covariant_derivative(x, &as_section(y)?)?)?)?;
        a.sub(&b)
    };
    let mut out = Vec::new();
    for ((a, b), l) in torsion {
        let x = VectorField::basis(chart, a);
        let y = VectorField::basis(chart, b);
        let expected = contracted_bracket(q, &x, &y)?
            .add(&nabla_q(&y, &x)?)?
            .sub(&nabla_q(&x, &y)?)?
            .sub(&alg.bracket(&x, &y)?)?;
        let v = as_field(&l)?.sub(&expected)?;
        out.push(Residual::new("torsion", vec![chart.basis_label(a), chart.basis_label(b)], v));
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::all_vanish;

    #[test]
    fn local_and_direct_formulas_agree() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let e = |s: &str| c.parse(s).unwrap();
        let gamma =
            vec![vec![vec![e("x"), e("0")], vec![e("1"), e("y")]], vec![vec![e("0"), e("x*y")], vec![e("2"), e("0")]]];
        let conn = LinearConnection::new(&c, 2, gamma).unwrap();
        let k = vec![vec![e("1"), e("x")], vec![e("y"), e("0")]];
        let alpha = EForm::from_coeffs(&c, 2, 1, [(vec![0], e("x^2")), (vec![1], e("x + y"))]).unwrap();
        assert_eq!(nabla_k(&conn, &k, &alpha).unwrap(), nabla_k_direct(&conn, &k, &alpha).unwrap());
    }

    #[test]
    fn abelian_bundle_flat_connection() {
        let c = Chart::new(&["x"]).unwrap();
        let anchor = vec![vec![c.one()], vec![c.coordinate(0)]];
        let b = BundleAlgebroid::from_entries(&c, anchor, []).unwrap();
        let conn = LinearConnection::flat(&c, 2);
        let l = delta_torsion(&conn, &b).unwrap();
        assert!(l.iter().all(|(_, v)| v.is_zero()));
        assert!(all_vanish(&check_connection_decomposition(&conn, &b).unwrap()));
    }

    #[test]
    fn symmetric_crosscheck_is_skipped_for_torsionful_connections() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let mut gamma = vec![vec![vec![c.zero(); 2]; 2]; 2];
        gamma[0][1][0] = c.one();
        let conn = LinearConnection::new(&c, 2, gamma).unwrap();
        assert!(symmetric_torsion_crosscheck(&conn, &TangentAlgebroid::trivial(&c)).unwrap().is_none());
    }
}
