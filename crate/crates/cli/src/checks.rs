//! Running one manifest check and turning the outcome into a record.

use nijenhuis::algebroid::{
    check_axioms, check_bundle_axioms, check_cohomology, check_connection_decomposition, derivation_from_algebroid,
    inverse_bracket_residuals, invertible_algebroid, koszul_differential, verify_trivial_isomorphism, AxiomReport,
    CohomologyReport, LinearConnection, Residual, TangentAlgebroid, Vanishes,
};
use nijenhuis::calculus::random::{random_form, random_function};
use nijenhuis::calculus::{fn_bracket, fn_decompose, nijenhuis_torsion, Chart, FormOperator, KForm, VectorValuedForm};
use nijenhuis::structures::{
    adapted_frame, bigrade, complex_algebroid_eps, connection_algebroid, connection_from_semispray, d_components,
    foliation_connection, idempotent_algebroid, idempotent_tensorial_operator, product_algebroid_eps, reassemble,
    semispray, tangent_chart,
};
use nijenhuis::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::manifest::{parse_vector_entries, CheckKind, CheckSpec, Manifest};
use crate::report::{Record, ResidualRecord};

/// Seed and probe degree in effect for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub probe_degree: u32,
}

impl Settings {
    pub fn from_manifest(m: &Manifest) -> Self {
        Self { seed: m.seed, probe_degree: m.probe_degree }
    }
}

/// Residual records collected while a check runs.
#[derive(Default)]
struct Sink(Vec<ResidualRecord>);

impl Sink {
    fn all<T: Vanishes>(&mut self, rs: &[Residual<T>]) {
        self.0.extend(rs.iter().map(ResidualRecord::from_residual));
    }

    fn one<T: Vanishes>(&mut self, slot: &str, value: &T) {
        self.0.push(ResidualRecord::new(slot, vec![], value));
    }

    fn tagged<T: Vanishes>(&mut self, tag: &str, rs: &[Residual<T>]) {
        for r in rs {
            let mut args = vec![tag.to_string()];
            args.extend(r.args.iter().cloned());
            self.0.push(ResidualRecord::new(&r.slot, args, &r.value));
        }
    }

    /// A vector-valued 2-form minus its expected values, one record per
    /// coordinate pair.
    fn pairs(&mut self, slot: &str, k: &VectorValuedForm, expected: &VectorValuedForm) -> nijenhuis::Result<()> {
        let chart = k.chart();
        for a in 0..chart.dim() {
            for b in a + 1..chart.dim() {
                let r = k.value_on_basis(&[a, b]).sub(&expected.value_on_basis(&[a, b]))?;
                self.0.push(ResidualRecord::new(slot, vec![chart.basis_label(a), chart.basis_label(b)], &r));
            }
        }
        Ok(())
    }

    fn cohomology(&mut self, tag: &str, r: &CohomologyReport) {
        let chart = r.condition1.chart();
        self.one(&format!("{tag}: ½[K,K]_FN + K∘L"), &r.condition1);
        self.one(&format!("{tag}: [K,L]_FN + ½[L,L]_RN"), &r.condition2);
        for (j, w) in r.square_on_functions.iter().enumerate() {
            self.0.push(ResidualRecord::new(&format!("{tag}: D²"), vec![chart.names()[j].clone()], w));
        }
        for (j, w) in r.square_on_differentials.iter().enumerate() {
            self.0.push(ResidualRecord::new(&format!("{tag}: D²"), vec![format!("d{}", chart.names()[j])], w));
        }
    }

    fn axioms(&mut self, r: &AxiomReport) {
        self.all(&r.leibniz);
        self.all(&r.jacobi);
        self.all(&r.anchor_morphism);
        self.all(&r.antisymmetry);
    }
}

/// Reasons a check could not run, with whatever evidence the error carries.
fn error_evidence(e: &Error) -> Vec<ResidualRecord> {
    let mut sink = Sink::default();
    match e {
        Error::TorsionNonzero { torsion } => {
            let zero = VectorValuedForm::zero(torsion.chart(), 2);
            sink.pairs("T", torsion, &zero).expect("same chart");
        }
        Error::ImageNotInvolutive { pair, residual } => {
            let chart = residual.chart();
            let args = vec![chart.basis_label(pair.0), chart.basis_label(pair.1)];
            sink.0.push(ResidualRecord::new("(Id − N)[N·, N·]", args, residual));
        }
        Error::NotCohomology(report) => sink.cohomology("D", report),
        _ => {}
    }
    sink.0
}

fn check_name(spec: &CheckSpec) -> String {
    spec.name.clone().unwrap_or_else(|| format!("{}-{}", spec.kind.label(), spec.kind.subject()))
}

pub fn run_check(m: &Manifest, spec: &CheckSpec, settings: Settings) -> Record {
    let name = check_name(spec);
    let construction = format!("{}({})", spec.kind.label(), spec.kind.subject());
    let mut sink = Sink::default();
    match run_kind(m, &spec.kind, settings, &mut sink) {
        Ok(()) => Record::judged(name, construction, sink.0),
        Err(e) => Record::error(name, construction, e.to_string(), error_evidence(&e)),
    }
}

fn run_kind(m: &Manifest, kind: &CheckKind, s: Settings, sink: &mut Sink) -> nijenhuis::Result<()> {
    let chart = &m.chart;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    match kind {
        CheckKind::Torsion { endo, expect } => {
            let n = &m.endomorphisms[endo];
            let t = nijenhuis_torsion(n)?;
            let expected = parse_vector_entries(chart, "expect", 2, expect).map_err(other)?;
            sink.pairs("T", &t, &expected)?;
            let half = chart.parse("1/2")?;
            sink.one("½[N,N]_FN − T_N", &fn_bracket(n, n)?.scale(&half).sub(&t)?);
        }
        CheckKind::Cohomology { algebroid } => {
            let report = check_cohomology(&m.algebroids[algebroid].derivation())?;
            cross_checked(&report)?;
            sink.cohomology("D", &report);
        }
        CheckKind::Axioms { algebroid } => {
            sink.axioms(&check_axioms(&m.algebroids[algebroid], s.probe_degree, s.seed)?);
        }
        CheckKind::Idempotent { endo } => {
            let n = &m.endomorphisms[endo];
            let built = idempotent_algebroid(n)?;
            sink.all(built.data.certificate());
            sink.one("N∘T_N − T_N", &built.torsion_in_image);
            sink.all(&built.bracket_forms);
            let ops = idempotent_tensorial_operator(n)?;
            cross_checked(&ops.d1_report)?;
            cross_checked(&ops.d2_report)?;
            sink.cohomology("D₁ = (N, −T_N)", &ops.d1_report);
            sink.cohomology("D₂ = (0, −T_N)", &ops.d2_report);
            sink.one("[N, −T_N]_FN", &ops.fn_bracket_residual);
            sink.one("[T_N, T_N]_RN", &ops.rn_bracket_residual);
            sink.all(&ops.torsion_of_torsion);
            sink.axioms(&check_axioms(&built.algebroid, s.probe_degree, s.seed)?);
        }
        CheckKind::Complex { endo, eps } => {
            let eps = parameter(chart, eps)?;
            let built = complex_algebroid_eps(&m.endomorphisms[endo], &eps)?;
            sink.all(&built.projectors.identities);
            sink.one("T_{p⁺} + 𝒯_J/(4ε²)", &built.projectors.torsion_relation);
            sink.all(&built.bracket_forms);
            sink.all(&built.holomorphic_involutivity);
            sink.axioms(&check_axioms(&built.algebroid, s.probe_degree, s.seed)?);
        }
        CheckKind::Product { endo, eps } => {
            let eps = parameter(chart, eps)?;
            let built = product_algebroid_eps(&m.endomorphisms[endo], &eps)?;
            sink.all(&built.identities);
            sink.all(&built.torsion_relations);
            sink.all(&built.bracket_form);
            sink.axioms(&check_axioms(&built.algebroid, s.probe_degree, s.seed)?);
        }
        CheckKind::Foliation { endo, expect, random_forms } => {
            let gamma = &m.endomorphisms[endo];
            let fol = foliation_connection(gamma)?;
            let expected = parse_vector_entries(chart, "expect", 2, expect).map_err(other)?;
            sink.pairs("R", &fol.curvature, &expected)?;
            sink.all(&fol.bracket_table);
            let parts = d_components(gamma)?;
            for r in [&parts.d10_report, &parts.d01_report, &parts.d2m1_report] {
                cross_checked(r)?;
            }
            sink.all(&parts.sum_residuals);
            sink.all(&parts.bigraded_crosscheck);
            sink.cohomology("d₀,₁", &parts.d01_report);
            sink.cohomology("d₂,₋₁", &parts.d2m1_report);
            sink.one("d₁,₀: ½[K,K]_FN + K∘L − R", &parts.d10_report.condition1.sub(&fol.curvature)?);
            let frame = adapted_frame(gamma)?;
            for q in 0..*random_forms {
                let degree = 1 + q % chart.dim();
                let w = random_form(chart, degree, s.probe_degree, &mut rng);
                let pieces = bigrade(&w, gamma)?;
                let tag = format!("ω{}", q + 1);
                let rebuilt = reassemble(&w, &pieces)?.sub(&w)?;
                sink.0.push(ResidualRecord::new("Σ bigraded components − ω", vec![tag.clone()], &rebuilt));
                for piece in &pieces {
                    sink.tagged(&tag, &piece.type_defects(&frame)?);
                }
            }
            sink.axioms(&check_axioms(&fol.idempotent.algebroid, s.probe_degree, s.seed)?);
        }
        CheckKind::Tangent { sprays, random_sprays } => {
            let n = chart.dim() / 2;
            let tc = tangent_chart(n)?;
            if tc.chart().names() != chart.names() {
                return Err(Error::InvalidChart(format!(
                    "tangent checks expect coordinates ({})",
                    tc.chart().names().join(", ")
                )));
            }
            sink.all(&tc.identities()?);
            let defect = if tc.kernel_equals_image()? { 0 } else { 1 };
            sink.one("ker J ≠ im J", &KForm::function(chart, chart.int(defect)));
            let mut all: Vec<(String, Vec<_>)> =
                sprays.iter().map(|name| (name.clone(), m.sprays[name].clone())).collect();
            for q in 0..*random_sprays {
                let f = (0..n).map(|_| random_function(chart, 2, &mut rng)).collect();
                all.push((format!("random{}", q + 1), f));
            }
            for (tag, f) in all {
                let spray = semispray(&tc, &f)?;
                let conn = connection_from_semispray(&tc, &spray)?;
                sink.tagged(&tag, &conn.identities);
                let alg = connection_algebroid(&tc, &conn.gamma)?;
                sink.0.push(ResidualRecord::new("T_v − ¼T_Γ", vec![tag.clone()], &alg.torsion_relation));
                sink.tagged(&tag, &alg.bracket_form);
                let ax = check_axioms(&alg.idempotent.algebroid, s.probe_degree, s.seed)?;
                for list in [&ax.leibniz, &ax.jacobi, &ax.anchor_morphism, &ax.antisymmetry] {
                    sink.tagged(&tag, list);
                }
            }
        }
        CheckKind::Bundle { bundle, random_connections } => {
            let balg = &m.bundle_algebroids[bundle];
            let report = check_bundle_axioms(balg)?;
            sink.all(&report.square_on_functions);
            sink.all(&report.square_on_eta);
            sink.all(&report.anchor_morphism);
            sink.all(&report.jacobi);
            for q in 0..*random_connections {
                let conn = random_connection(chart, balg.rank(), s.probe_degree, &mut rng)?;
                let tag = format!("∇{}", q + 1);
                sink.tagged(&tag, &check_connection_decomposition(&conn, balg)?);
            }
        }
        CheckKind::Decompose { derivation } => match m.derivations.get(derivation) {
            Some(images) => {
                let d = fn_decompose(chart, &images.on_coordinates, &images.on_differentials)?;
                for j in 0..chart.dim() {
                    let x = KForm::function(chart, chart.coordinate(j));
                    let r = d.apply(&x)?.sub(&images.on_coordinates[j])?;
                    sink.0.push(ResidualRecord::new("(𝓛_K + ι_L) − D", vec![chart.names()[j].clone()], &r));
                    let r = d.apply(&KForm::differential(chart, j))?.sub(&images.on_differentials[j])?;
                    sink.0.push(ResidualRecord::new("(𝓛_K + ι_L) − D", vec![format!("d{}", chart.names()[j])], &r));
                }
            }
            None => {
                let alg = &m.algebroids[derivation];
                let d = derivation_from_algebroid(alg)?;
                sink.one("K' − K", &d.k.sub(alg.anchor())?);
                sink.one("L' − L", &d.l.sub(alg.correction())?);
                koszul_agreement(alg, sink)?;
            }
        },
        CheckKind::Isomorphism { endo } => {
            let k = &m.endomorphisms[endo];
            let alg = invertible_algebroid(k)?;
            let report = check_cohomology(&alg.derivation())?;
            cross_checked(&report)?;
            sink.cohomology("(K, −K⁻¹T_K)", &report);
            sink.all(&inverse_bracket_residuals(k, s.probe_degree, s.seed)?);
            sink.all(&verify_trivial_isomorphism(&alg, s.probe_degree, s.seed)?);
        }
    }
    Ok(())
}

fn other(e: crate::manifest::ManifestError) -> Error {
    Error::InvalidParameter(e.to_string())
}

fn parameter(chart: &Chart, eps: &Option<String>) -> nijenhuis::Result<nijenhuis::scalar::ScalarExpr> {
    match eps {
        Some(text) => chart.parse(text),
        None => Ok(chart.one()),
    }
}

/// Errors out when the direct computation of `D²` disagrees with the
/// tensor conditions, which would point at a defect in the engine.
fn cross_checked(r: &CohomologyReport) -> nijenhuis::Result<()> {
    if r.consistent() {
        Ok(())
    } else {
        Err(Error::ReconstructionMismatch("D² on generators disagrees with the tensor conditions".into()))
    }
}

fn koszul_agreement(alg: &TangentAlgebroid, sink: &mut Sink) -> nijenhuis::Result<()> {
    let chart = alg.chart();
    let d = alg.derivation();
    let names = chart.names();
    let mut probes: Vec<(String, KForm)> = Vec::new();
    for (j, name) in names.iter().enumerate() {
        probes.push((name.clone(), KForm::function(chart, chart.coordinate(j))));
        probes.push((format!("d{name}"), KForm::differential(chart, j)));
    }
    for a in 0..chart.dim() {
        for b in a + 1..chart.dim() {
            let w = KForm::differential(chart, a).wedge(&KForm::differential(chart, b))?;
            probes.push((format!("d{}∧d{}", names[a], names[b]), w));
        }
    }
    for (label, w) in probes {
        let r = koszul_differential(alg, &w)?.sub(&d.apply(&w)?)?;
        sink.0.push(ResidualRecord::new("Koszul − (𝓛_K + ι_L)", vec![label], &r));
    }
    Ok(())
}

pub fn random_connection(
    chart: &Chart,
    rank: usize,
    degree: u32,
    rng: &mut ChaCha8Rng,
) -> nijenhuis::Result<LinearConnection> {
    let gamma = (0..chart.dim())
        .map(|_| (0..rank).map(|_| (0..rank).map(|_| random_function(chart, degree, rng)).collect()).collect())
        .collect();
    LinearConnection::new(chart, rank, gamma)
}
