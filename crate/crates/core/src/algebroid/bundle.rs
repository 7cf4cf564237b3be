//! Algebroids on a trivialized vector bundle `E → U` of rank `r`, given by
//! anchor functions `q_a^i` and structure functions `c_{ab}^c`.

use std::fmt;

use super::tangent::TangentAlgebroid;
use super::{all_vanish, Residual, Vanishes};
use crate::calculus::{increasing, Alternating, Chart, MultiIndex, VectorField};
use crate::error::{Error, Result};
use crate::scalar::ScalarExpr;

/// A section `Σ A^a s_a` of `E`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ESection {
    chart: Chart,
    comps: Vec<ScalarExpr>,
}

impl ESection {
    pub fn new(chart: &Chart, comps: Vec<ScalarExpr>) -> Result<Self> {
        for c in &comps {
            chart.admit(c)?;
        }
        Ok(Self { chart: chart.clone(), comps })
    }

    pub fn basis(chart: &Chart, rank: usize, a: usize) -> Self {
        let mut comps = vec![chart.zero(); rank];
        comps[a] = chart.one();
        Self { chart: chart.clone(), comps }
    }

    pub fn zero(chart: &Chart, rank: usize) -> Self {
        Self { chart: chart.clone(), comps: vec![chart.zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, a: usize) -> &ScalarExpr {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarExpr::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        if self.rank() != other.rank() {
            return Err(Error::Shape("sections of different rank".into()));
        }
        Ok(Self {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        Self { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }
}

impl Vanishes for ESection {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn components(&self) -> Vec<(String, String)> {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (format!("s{}", a + 1), self.chart.render(c)))
            .collect()
    }
}

impl fmt::Display for ESection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("({}) s{}", self.chart.render(c), a + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A section of `ΛᵖE*`, `Σ ω_I η^I` over increasing fiber multi-indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EForm {
    chart: Chart,
    rank: usize,
    alt: Alternating,
}

impl EForm {
    pub fn zero(chart: &Chart, rank: usize, degree: usize) -> Self {
        Self { chart: chart.clone(), rank, alt: Alternating::zero(degree, chart.dim()) }
    }

    pub fn function(chart: &Chart, rank: usize, f: ScalarExpr) -> Self {
        let mut out = Self::zero(chart, rank, 0);
        out.alt.add_at(&[], &f);
        out
    }

    /// The dual basis 1-form `η^c`.
    pub fn eta(chart: &Chart, rank: usize, c: usize) -> Self {
        let mut out = Self::zero(chart, rank, 1);
        out.alt.add_at(&[c], &chart.one());
        out
    }

    pub fn from_coeffs<I>(chart: &Chart, rank: usize, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    {
        let mut out = Self::zero(chart, rank, degree);
        for (idx, c) in entries {
            if idx.len() != degree {
                return Err(Error::Shape(format!("index of length {} in a {degree}-form", idx.len())));
            }
            if let Some(&bad) = idx.iter().find(|&&v| v >= rank) {
                return Err(Error::Index(format!("fiber index {bad} for rank {rank}")));
            }
            chart.admit(&c)?;
            out.alt.add_at(&idx, &c);
        }
        Ok(out)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.alt.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.alt.is_zero()
    }

    pub fn coeff(&self, index: &[usize]) -> ScalarExpr {
        self.alt.get_unsorted(index)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.alt.iter()
    }

    fn same(&self, other: &Self) -> Result<()> {
        self.chart.check_same(&other.chart)?;
        if self.rank != other.rank || self.degree() != other.degree() {
            return Err(Error::Shape("combining E-forms of different rank or degree".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { chart: self.chart.clone(), rank: self.rank, alt: self.alt.add(&other.alt) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self { chart: self.chart.clone(), rank: self.rank, alt: self.alt.sub(&other.alt) })
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        Self { chart: self.chart.clone(), rank: self.rank, alt: self.alt.scale(f) }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), rank: self.rank, alt: self.alt.wedge(&other.alt) })
    }

    /// `ω(A_1, …, A_p)`.
    pub fn eval(&self, sections: &[ESection]) -> Result<ScalarExpr> {
        if sections.len() != self.degree() {
            return Err(Error::Shape(format!(
                "{} arguments for an E-form of degree {}",
                sections.len(),
                self.degree()
            )));
        }
        let mut acc = self.chart.zero();
        for (idx, c) in self.alt.iter() {
            let rows: Vec<Vec<ScalarExpr>> =
                idx.iter().map(|&i| sections.iter().map(|s| s.component(i).clone()).collect()).collect();
            acc = acc + c * &crate::calculus::matrix::det(&rows);
        }
        Ok(acc)
    }
}

impl Vanishes for EForm {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn components(&self) -> Vec<(String, String)> {
        self.alt
            .iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|&i| format!("η{}", i + 1)).collect();
                let label = if basis.is_empty() { "1".to_string() } else { basis.join("∧") };
                (label, self.chart.render(c))
            })
            .collect()
    }
}

impl fmt::Display for EForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .alt
            .iter()
            .map(|(idx, c)| {
                let coeff = self.chart.render(c);
                if idx.is_empty() {
                    return coeff;
                }
                let basis: Vec<String> = idx.iter().map(|&i| format!("η{}", i + 1)).collect();
                format!("({coeff}) {}", basis.join("∧"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Anchor `q(s_a) = Σ_i q_a^i ∂_i` and bracket
/// `[[s_a, s_b]] = Σ_c c_{ab}^c s_c`, extended by the Leibniz rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleAlgebroid {
    chart: Chart,
    rank: usize,
    anchor: Vec<Vec<ScalarExpr>>,
    structure: Vec<Vec<Vec<ScalarExpr>>>,
}

impl BundleAlgebroid {
    /// `anchor[a][i] = q_a^i` (an `r × m` matrix) and
    /// `structure[a][b][c] = c_{ab}^c`, which must be antisymmetric in `a, b`.
    pub fn new(chart: &Chart, anchor: Vec<Vec<ScalarExpr>>, structure: Vec<Vec<Vec<ScalarExpr>>>) -> Result<Self> {
        let r = anchor.len();
        let m = chart.dim();
        if anchor.iter().any(|row| row.len() != m) {
            return Err(Error::Shape(format!("anchor rows must have {m} entries")));
        }
        if structure.len() != r || structure.iter().any(|s| s.len() != r || s.iter().any(|t| t.len() != r)) {
            return Err(Error::Shape(format!("structure functions must be {r}×{r}×{r}")));
        }
        for e in anchor.iter().flatten().chain(structure.iter().flatten().flatten()) {
            chart.admit(e)?;
        }
        for (a, b, c) in (0..r).flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |c| (a, b, c)))) {
            if structure[a][b][c] != -&structure[b][a][c] {
                return Err(Error::Shape(format!(
                    "structure functions are not antisymmetric at c[{},{},{}]",
                    a + 1,
                    b + 1,
                    c + 1
                )));
            }
        }
        Ok(Self { chart: chart.clone(), rank: r, anchor, structure })
    }

    /// Builds from entries `((a, b, c), c_{ab}^c)`; `c_{ba}^c` is filled in by
    /// antisymmetry and conflicting entries are rejected.
    pub fn from_entries<I>(chart: &Chart, anchor: Vec<Vec<ScalarExpr>>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), ScalarExpr)>,
    {
        let r = anchor.len();
        let mut set: Vec<Vec<Vec<Option<ScalarExpr>>>> = vec![vec![vec![None; r]; r]; r];
        for ((a, b, c), e) in entries {
            if a >= r || b >= r || c >= r {
                return Err(Error::Index(format!("structure index ({}, {}, {}) for rank {r}", a + 1, b + 1, c + 1)));
            }
            for (x, y, v) in [(a, b, e.clone()), (b, a, -e)] {
                match &set[x][y][c] {
                    Some(old) if *old != v => {
                        return Err(Error::Shape(format!(
                            "conflicting structure entries at c[{},{},{}]",
                            x + 1,
                            y + 1,
                            c + 1
                        )))
                    }
                    _ => set[x][y][c] = Some(v),
                }
            }
        }
        let structure = set
            .into_iter()
            .map(|s| {
                s.into_iter().map(|t| t.into_iter().map(|v| v.unwrap_or_else(|| chart.zero())).collect()).collect()
            })
            .collect();
        Self::new(chart, anchor, structure)
    }

    /// The tangent algebroid `(K, L)` with `s_a = ∂_a`.
    pub fn from_tangent(alg: &TangentAlgebroid) -> Result<Self> {
        let chart = alg.chart();
        let n = chart.dim();
        let basis: Vec<VectorField> = (0..n).map(|a| VectorField::basis(chart, a)).collect();
        let anchor = (0..n)
            .map(|a| alg.anchor().apply(&basis[a]).map(|v| v.components().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let mut structure = vec![vec![vec![chart.zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    structure[a][b] = alg.bracket(&basis[a], &basis[b])?.components().to_vec();
                }
            }
        }
        Self::new(chart, anchor, structure)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn anchor_matrix(&self) -> &[Vec<ScalarExpr>] {
        &self.anchor
    }

    pub fn structure(&self, a: usize, b: usize, c: usize) -> &ScalarExpr {
        &self.structure[a][b][c]
    }

    /// `q(s_a)`.
    pub fn anchor_field(&self, a: usize) -> VectorField {
        VectorField::new(&self.chart, self.anchor[a].clone()).expect("anchor rows match the chart")
    }

    /// `q(A) = Σ_a A^a q(s_a)`.
    pub fn anchor_of(&self, s: &ESection) -> VectorField {
        let m = self.chart.dim();
        let comps = (0..m)
            .map(|i| {
                let mut acc = self.chart.zero();
                for a in 0..self.rank {
                    if !s.comps[a].is_zero() && !self.anchor[a][i].is_zero() {
                        acc = acc + &s.comps[a] * &self.anchor[a][i];
                    }
                }
                acc
            })
            .collect();
        VectorField::new(&self.chart, comps).expect("anchor values live on the chart")
    }

    /// `[[A, B]] = Σ A^a B^b c_{ab}^c s_c + q(A)(B^c) s_c − q(B)(A^c) s_c`.
    pub fn bracket(&self, x: &ESection, y: &ESection) -> Result<ESection> {
        if x.rank() != self.rank || y.rank() != self.rank {
            return Err(Error::Shape("section rank does not match the algebroid".into()));
        }
        let qx = self.anchor_of(x);
        let qy = self.anchor_of(y);
        let mut comps = Vec::with_capacity(self.rank);
        for c in 0..self.rank {
            let mut acc = qx.apply(&y.comps[c]) - qy.apply(&x.comps[c]);
            for a in 0..self.rank {
                for b in 0..self.rank {
                    let s = &self.structure[a][b][c];
                    if !s.is_zero() && !x.comps[a].is_zero() && !y.comps[b].is_zero() {
                        acc = acc + &(&x.comps[a] * &y.comps[b]) * s;
                    }
                }
            }
            comps.push(acc);
        }
        Ok(ESection { chart: self.chart.clone(), comps })
    }

    fn d_function(&self, f: &ScalarExpr) -> Alternating {
        let mut alt = Alternating::zero(1, self.chart.dim());
        for a in 0..self.rank {
            alt.add_at(&[a], &self.anchor_field(a).apply(f));
        }
        alt
    }

    fn d_eta(&self, c: usize) -> Alternating {
        let mut alt = Alternating::zero(2, self.chart.dim());
        for a in 0..self.rank {
            for b in a + 1..self.rank {
                alt.add_at(&[a, b], &-&self.structure[a][b][c]);
            }
        }
        alt
    }
}

fn monomial(indices: &[usize], nvars: usize) -> Alternating {
    let mut alt = Alternating::zero(indices.len(), nvars);
    alt.add_at(indices, &ScalarExpr::one(nvars));
    alt
}

/// The algebroid differential on `ΓΛE*`: the degree-one derivation with
/// `Df = Σ_a q(s_a)(f) η^a` and `(Dη^c)(s_a, s_b) = −c_{ab}^c`.
pub fn bundle_de_rham(balg: &BundleAlgebroid, w: &EForm) -> Result<EForm> {
    balg.chart.check_same(&w.chart)?;
    if w.rank != balg.rank {
        return Err(Error::Shape("E-form rank does not match the algebroid".into()));
    }
    let nv = balg.chart.dim();
    let p = w.degree();
    let d_etas: Vec<Alternating> = (0..balg.rank).map(|c| balg.d_eta(c)).collect();
    let mut out = Alternating::zero(p + 1, nv);
    for (idx, f) in w.alt.iter() {
        out = out.add(&balg.d_function(f).wedge(&monomial(idx, nv)));
        for (k, &c) in idx.iter().enumerate() {
            let term = monomial(&idx[..k], nv).wedge(&d_etas[c]).wedge(&monomial(&idx[k + 1..], nv)).scale(f);
            out = if k % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
    }
    Ok(EForm { chart: balg.chart.clone(), rank: balg.rank, alt: out })
}

/// The same differential by the invariant formula on basis sections, for
/// cross-checking.
pub fn bundle_koszul(balg: &BundleAlgebroid, w: &EForm) -> Result<EForm> {
    balg.chart.check_same(&w.chart)?;
    let r = balg.rank;
    let p = w.degree();
    let basis: Vec<ESection> = (0..r).map(|a| ESection::basis(&balg.chart, r, a)).collect();
    let mut entries = Vec::new();
    for idx in increasing(r, p + 1) {
        let mut acc = balg.chart.zero();
        for a in 0..=p {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(q, _)| *q != a).map(|(_, &v)| v).collect();
            let t = balg.anchor_field(idx[a]).apply(&w.coeff(&rest));
            acc = if a % 2 == 0 { acc + t } else { acc - t };
        }
        for a in 0..=p {
            for b in a + 1..=p {
                let mut args = vec![balg.bracket(&basis[idx[a]], &basis[idx[b]])?];
                args.extend(idx.iter().enumerate().filter(|(q, _)| *q != a && *q != b).map(|(_, &v)| basis[v].clone()));
                let t = w.eval(&args)?;
                acc = if (a + b) % 2 == 0 { acc + t } else { acc - t };
            }
        }
        entries.push((idx, acc));
    }
    EForm::from_coeffs(&balg.chart, r, p + 1, entries)
}

/// `D² = 0` on generators, and the same information in structure-function
/// form (anchor morphism and Jacobi on basis sections).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleReport {
    pub square_on_functions: Vec<Residual<EForm>>,
    pub square_on_eta: Vec<Residual<EForm>>,
    pub anchor_morphism: Vec<Residual<VectorField>>,
    pub jacobi: Vec<Residual<ESection>>,
}

impl BundleReport {
    pub fn passes(&self) -> bool {
        all_vanish(&self.square_on_functions)
            && all_vanish(&self.square_on_eta)
            && all_vanish(&self.anchor_morphism)
            && all_vanish(&self.jacobi)
    }

    /// Whether the two routes agree on the verdict.
    pub fn consistent(&self) -> bool {
        let squares = all_vanish(&self.square_on_functions) && all_vanish(&self.square_on_eta);
        let structure = all_vanish(&self.anchor_morphism) && all_vanish(&self.jacobi);
        squares == structure
    }
}

pub fn check_bundle_axioms(balg: &BundleAlgebroid) -> Result<BundleReport> {
    let chart = &balg.chart;
    let r = balg.rank;
    let mut square_on_functions = Vec::new();
    for i in 0..chart.dim() {
        let f = EForm::function(chart, r, chart.coordinate(i));
        let dd = bundle_de_rham(balg, &bundle_de_rham(balg, &f)?)?;
        square_on_functions.push(Residual::new("D²", vec![chart.names()[i].clone()], dd));
    }
    let mut square_on_eta = Vec::new();
    for c in 0..r {
        let dd = bundle_de_rham(balg, &bundle_de_rham(balg, &EForm::eta(chart, r, c))?)?;
        square_on_eta.push(Residual::new("D²", vec![format!("η{}", c + 1)], dd));
    }
    let basis: Vec<ESection> = (0..r).map(|a| ESection::basis(chart, r, a)).collect();
    let label = |a: usize| format!("s{}", a + 1);
    let mut anchor_morphism = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let lhs = balg.anchor_of(&balg.bracket(&basis[a], &basis[b])?);
            let rhs = balg.anchor_field(a).lie_bracket(&balg.anchor_field(b))?;
            anchor_morphism.push(Residual::new("anchor", vec![label(a), label(b)], lhs.sub(&rhs)?));
        }
    }
    let br = |x: &ESection, y: &ESection| balg.bracket(x, y);
    let mut jacobi = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                let (x, y, z) = (&basis[a], &basis[b], &basis[c]);
                let v = br(x, &br(y, z)?)?.add(&br(y, &br(z, x)?)?)?.add(&br(z, &br(x, y)?)?)?;
                jacobi.push(Residual::new("jacobi", vec![label(a), label(b), label(c)], v));
            }
        }
    }
    Ok(BundleReport { square_on_functions, square_on_eta, anchor_morphism, jacobi })
}
