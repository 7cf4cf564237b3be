use super::idempotent::{idempotent_algebroid, idempotent_data, IdempotentAlgebroid};
use crate::algebroid::{check_cohomology, CohomologyReport, Residual};
use crate::calculus::matrix::independent_columns;
use crate::calculus::{increasing, DerivationDeg1, ExteriorD, FormOperator, KForm, VectorField, VectorValuedForm};
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A local frame adapted to `ker γ ⊕ im γ`, chosen among the columns of
/// `Id − γ` and `γ` by elimination over the field of rational functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdaptedFrame {
    pub horizontal: Vec<VectorField>,
    pub vertical: Vec<VectorField>,
    /// Distinct nonconstant denominators in the frame. The frame is valid
    /// away from their zeros.
    pub poles: Vec<ScalarExpr>,
}

impl AdaptedFrame {
    /// Frame fields with labels `h1, h2, …, v1, …`, horizontal first.
    pub fn labelled(&self) -> Vec<(String, VectorField, bool)> {
        let h = self.horizontal.iter().enumerate().map(|(a, f)| (format!("h{}", a + 1), f.clone(), false));
        let v = self.vertical.iter().enumerate().map(|(a, f)| (format!("v{}", a + 1), f.clone(), true));
        h.chain(v).collect()
    }
}

fn columns_of(k: &VectorValuedForm) -> Result<Vec<VectorField>> {
    let chart = k.chart();
    (0..chart.dim()).map(|a| k.apply(&VectorField::basis(chart, a))).collect()
}

fn pick(fields: Vec<VectorField>) -> Vec<VectorField> {
    let columns: Vec<Vec<ScalarExpr>> = fields.iter().map(|f| f.components().to_vec()).collect();
    let chosen = independent_columns(&columns);
    fields.into_iter().enumerate().filter(|(a, _)| chosen.contains(a)).map(|(_, f)| f).collect()
}

pub fn adapted_frame(gamma: &VectorValuedForm) -> Result<AdaptedFrame> {
    if !gamma.compose(gamma)?.sub(gamma)?.is_zero() {
        return Err(Error::NotIdempotent);
    }
    let complement = VectorValuedForm::identity(gamma.chart()).sub(gamma)?;
    let horizontal = pick(columns_of(&complement)?);
    let vertical = pick(columns_of(gamma)?);
    let mut poles: Vec<ScalarExpr> = Vec::new();
    for f in horizontal.iter().chain(&vertical) {
        for c in f.components() {
            let den = ScalarExpr::from_poly(c.denominator().clone());
            if den.as_constant().is_none() && !poles.contains(&den) {
                poles.push(den);
            }
        }
    }
    Ok(AdaptedFrame { horizontal, vertical, poles })
}

/// An Ehresmann connection `γ` (a projector onto an involutive vertical
/// distribution), its curvature `R = T_γ`, and the algebroid with anchor
/// `γ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FoliationConnection {
    pub curvature: VectorValuedForm,
    pub idempotent: IdempotentAlgebroid,
    pub frame: AdaptedFrame,
    /// The bracket on the adapted frame minus its expected value: `0` on two
    /// horizontal fields, `(Id − γ)[X, Y]` on mixed pairs and `[Y, Y']` on
    /// two vertical fields.
    pub bracket_table: Vec<Residual<VectorField>>,
}

pub fn foliation_connection(gamma: &VectorValuedForm) -> Result<FoliationConnection> {
    let idempotent = idempotent_algebroid(gamma)?;
    let frame = adapted_frame(gamma)?;
    let complement = VectorValuedForm::identity(gamma.chart()).sub(gamma)?;
    let alg = &idempotent.algebroid;
    let labelled = frame.labelled();
    let mut bracket_table = Vec::new();
    for (la, x, xv) in &labelled {
        for (lb, y, yv) in &labelled {
            if la == lb {
                continue;
            }
            let lie = x.lie_bracket(y)?;
            let expected = match (xv, yv) {
                (false, false) => VectorField::zero(gamma.chart()),
                (true, true) => lie,
                _ => complement.apply(&lie)?,
            };
            let r = alg.bracket(x, y)?.sub(&expected)?;
            bracket_table.push(Residual::new("bracket table", vec![la.clone(), lb.clone()], r));
        }
    }
    Ok(FoliationConnection { curvature: idempotent.torsion.clone(), idempotent, frame, bracket_table })
}

/// A form of type `(p, q)`: it vanishes whenever more than `p` arguments are
/// horizontal or more than `q` are vertical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigradedForm {
    pub form: KForm,
    pub p: usize,
    pub q: usize,
}

impl BigradedForm {
    /// Values on frame tuples with too many horizontal or vertical entries.
    /// All of them vanish exactly when the form has the claimed type.
    pub fn type_defects(&self, frame: &AdaptedFrame) -> Result<Vec<Residual<KForm>>> {
        let labelled = frame.labelled();
        let chart = self.form.chart();
        let mut out = Vec::new();
        for idx in increasing(labelled.len(), self.form.degree()) {
            let vertical = idx.iter().filter(|&&a| labelled[a].2).count();
            let horizontal = idx.len() - vertical;
            if vertical <= self.q && horizontal <= self.p {
                continue;
            }
            let args: Vec<VectorField> = idx.iter().map(|&a| labelled[a].1.clone()).collect();
            let value = self.form.eval(&args)?;
            let names = idx.iter().map(|&a| labelled[a].0.clone()).collect();
            out.push(Residual::new(format!("type ({}, {})", self.p, self.q), names, KForm::function(chart, value)));
        }
        Ok(out)
    }
}

/// The pullback `Σ_j M^i_j dx^j` of `dx^i` along an endomorphism `M`.
fn pullbacks(m: &VectorValuedForm) -> Result<Vec<KForm>> {
    let chart = m.chart();
    let rows = m.matrix()?;
    rows.into_iter()
        .map(|row| {
            let entries = row.into_iter().enumerate().map(|(j, e)| (vec![j], e));
            KForm::from_coeffs(chart, 1, entries)
        })
        .collect()
}

/// Splits `ω` into its components of type `(p, q)`, `p + q = deg ω`, using
/// `dx^i = (Id − γ)*dx^i + γ*dx^i`. Only nonzero components are returned,
/// ordered by increasing `q`.
pub fn bigrade(w: &KForm, gamma: &VectorValuedForm) -> Result<Vec<BigradedForm>> {
    let chart = w.chart();
    if !gamma.compose(gamma)?.sub(gamma)?.is_zero() {
        return Err(Error::NotIdempotent);
    }
    let horizontal = pullbacks(&VectorValuedForm::identity(chart).sub(gamma)?)?;
    let vertical = pullbacks(gamma)?;
    let k = w.degree();
    let mut buckets: Vec<KForm> = vec![KForm::zero(chart, k); k + 1];
    for (idx, c) in w.terms() {
        'masks: for mask in 0u32..(1 << k) {
            let mut acc = KForm::function(chart, c.clone());
            for (pos, &i) in idx.iter().enumerate() {
                let factor = if mask & (1 << pos) != 0 { &vertical[i] } else { &horizontal[i] };
                acc = acc.wedge(factor)?;
                if acc.is_zero() {
                    continue 'masks;
                }
            }
            let q = mask.count_ones() as usize;
            buckets[q] = buckets[q].add(&acc)?;
        }
    }
    Ok(buckets
        .into_iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(q, form)| BigradedForm { form, p: k - q, q })
        .collect())
}

/// Sums bigraded components back into a single form.
pub fn reassemble(w: &KForm, parts: &[BigradedForm]) -> Result<KForm> {
    parts.iter().try_fold(KForm::zero(w.chart(), w.degree()), |acc, part| acc.add(&part.form))
}

/// The three pieces `d = d₁,₀ + d₂,₋₁ + d₀,₁` of the exterior derivative
/// for a connection `γ` with curvature `R`, as Frölicher–Nijenhuis pairs:
/// `d₁,₀ = 𝓛_{Id−γ} + ι_{2R}`, `d₀,₁ = 𝓛_γ − ι_R`, `d₂,₋₁ = −ι_R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DComponents {
    pub d10: DerivationDeg1,
    pub d01: DerivationDeg1,
    pub d2m1: DerivationDeg1,
    pub d10_report: CohomologyReport,
    pub d01_report: CohomologyReport,
    pub d2m1_report: CohomologyReport,
    /// `(d₁,₀ + d₂,₋₁ + d₀,₁ − d)` on every `x^j` and `dx^j`.
    pub sum_residuals: Vec<Residual<KForm>>,
    /// `d_{i,j} ω − (dω)_{(p+i, q+j)}` for the pure-type pieces `ω` of every
    /// `x^j`, `dx^j` and `dx^a∧dx^b`: the pairs agree with projecting `d`
    /// onto bidegrees.
    pub bigraded_crosscheck: Vec<Residual<KForm>>,
}

pub fn d_components(gamma: &VectorValuedForm) -> Result<DComponents> {
    idempotent_data(gamma)?;
    let chart = gamma.chart();
    let r = crate::calculus::nijenhuis_torsion(gamma)?;
    let complement = VectorValuedForm::identity(chart).sub(gamma)?;
    let d10 = DerivationDeg1::new(complement, r.scale(&chart.int(2)))?;
    let d01 = DerivationDeg1::new(gamma.clone(), r.neg())?;
    let d2m1 = DerivationDeg1::new(VectorValuedForm::zero(chart, 1), r.neg())?;

    let n = chart.dim();
    let mut generators: Vec<(String, KForm)> = Vec::new();
    for j in 0..n {
        let name = &chart.names()[j];
        generators.push((name.clone(), KForm::function(chart, chart.coordinate(j))));
        generators.push((format!("d{name}"), KForm::differential(chart, j)));
    }
    let mut sum_residuals = Vec::new();
    for (label, g) in &generators {
        let total = d10.apply(g)?.add(&d01.apply(g)?)?.add(&d2m1.apply(g)?)?;
        sum_residuals.push(Residual::new("sum − d", vec![label.clone()], total.sub(&ExteriorD.apply(g)?)?));
    }

    let mut probes = generators;
    for a in 0..n {
        for b in a + 1..n {
            let w = KForm::differential(chart, a).wedge(&KForm::differential(chart, b))?;
            probes.push((format!("d{}∧d{}", chart.names()[a], chart.names()[b]), w));
        }
    }
    let pieces: [(&DerivationDeg1, isize, isize); 3] = [(&d10, 1, 0), (&d01, 0, 1), (&d2m1, 2, -1)];
    let mut bigraded_crosscheck = Vec::new();
    for (label, w) in &probes {
        for part in bigrade(w, gamma)? {
            let dw = bigrade(&part.form.d(), gamma)?;
            for &(op, di, dj) in &pieces {
                let (p, q) = (part.p as isize + di, part.q as isize + dj);
                let expected = dw
                    .iter()
                    .find(|c| c.p as isize == p && c.q as isize == q)
                    .map_or_else(|| KForm::zero(chart, w.degree() + 1), |c| c.form.clone());
                let r = op.apply(&part.form)?.sub(&expected)?;
                let slot = format!("d({di},{dj}) on type ({}, {})", part.p, part.q);
                bigraded_crosscheck.push(Residual::new(slot, vec![label.clone()], r));
            }
        }
    }

    Ok(DComponents {
        d10_report: check_cohomology(&d10)?,
        d01_report: check_cohomology(&d01)?,
        d2m1_report: check_cohomology(&d2m1)?,
        d10,
        d01,
        d2m1,
        sum_residuals,
        bigraded_crosscheck,
    })
}
