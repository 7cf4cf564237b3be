//! Manifest-driven verification for the `nijenhuis` engine: load a chart and
//! named tensors from JSON, run identity checks in parallel, and report
//! every residual as a canonical expression.

pub mod checks;
pub mod manifest;
pub mod report;

use std::collections::BTreeMap;

use nijenhuis::algebroid::{invertible_algebroid, TangentAlgebroid};
use nijenhuis::calculus::{fn_decompose, increasing, Chart, DerivationDeg1, VectorValuedForm};
use nijenhuis::structures::{
    complex_algebroid, connection_algebroid, connection_from_semispray, foliation_connection, idempotent_algebroid,
    product_algebroid, semispray, tangent_chart,
};
use rayon::prelude::*;
use serde::Serialize;

pub use checks::{run_check, Settings};
pub use manifest::{load_manifest, parse_manifest, CheckKind, CheckSpec, Manifest, ManifestError};
pub use report::{emit, exit_code_for, to_json, Format, Record, Report, Status};

/// Runs every check of the manifest. Checks run in parallel; records keep
/// manifest order.
pub fn run_all(m: &Manifest, settings: Settings) -> Report {
    let records: Vec<Record> = m.checks.par_iter().map(|spec| run_check(m, spec, settings)).collect();
    Report::new(settings.seed, settings.probe_degree, m.points, records)
}

/// A single torsion check on the named endomorphism.
pub fn torsion_report(m: &Manifest, endo: &str, settings: Settings) -> Result<Report, ManifestError> {
    if !m.endomorphisms.contains_key(endo) {
        return Err(ManifestError::Unresolved { at: "command line".into(), what: "endomorphism", name: endo.into() });
    }
    let spec = CheckSpec {
        name: Some(format!("torsion-{endo}")),
        kind: CheckKind::Torsion { endo: endo.to_string(), expect: BTreeMap::new() },
    };
    Ok(Report::new(settings.seed, settings.probe_degree, m.points, vec![run_check(m, &spec, settings)]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartFragment {
    pub coords: Vec<String>,
    pub complex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormFragment {
    pub degree: usize,
    pub entries: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebroidFragment {
    pub anchor: String,
    pub correction: String,
}

/// A manifest fragment holding one algebroid: its anchor as an
/// endomorphism and its correction as a vector-valued 2-form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub chart: ChartFragment,
    pub endomorphisms: BTreeMap<String, Vec<Vec<String>>>,
    pub forms: BTreeMap<String, FormFragment>,
    pub algebroids: BTreeMap<String, AlgebroidFragment>,
}

fn matrix_strings(k: &VectorValuedForm) -> Vec<Vec<String>> {
    let chart = k.chart();
    k.matrix()
        .expect("anchors are endomorphisms")
        .iter()
        .map(|row| row.iter().map(|e| chart.render(e)).collect())
        .collect()
}

fn form_strings(l: &VectorValuedForm) -> FormFragment {
    let chart = l.chart();
    let mut entries = BTreeMap::new();
    for idx in increasing(chart.dim(), l.degree()) {
        let v = l.value_on_basis(&idx);
        if v.is_zero() {
            continue;
        }
        let key = idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        entries.insert(key, v.components().iter().map(|e| chart.render(e)).collect());
    }
    FormFragment { degree: l.degree(), entries }
}

fn chart_fragment(chart: &Chart) -> ChartFragment {
    ChartFragment { coords: chart.names().to_vec(), complex: chart.is_complexified() }
}

pub fn fragment(id: &str, k: &VectorValuedForm, l: &VectorValuedForm) -> Fragment {
    let anchor = format!("{id}_anchor");
    let correction = format!("{id}_correction");
    Fragment {
        chart: chart_fragment(k.chart()),
        endomorphisms: BTreeMap::from([(anchor.clone(), matrix_strings(k))]),
        forms: BTreeMap::from([(correction.clone(), form_strings(l))]),
        algebroids: BTreeMap::from([(id.to_string(), AlgebroidFragment { anchor, correction })]),
    }
}

/// Builds an algebroid from a recipe of the form `<recipe>:<name>`:
/// `idempotent`, `complex`, `product`, `foliation` and `invertible` take an
/// endomorphism, `connection` takes a spray, and `algebroid` takes an
/// algebroid already in the manifest.
pub fn build(m: &Manifest, construction: &str) -> Result<(String, TangentAlgebroid), String> {
    let (recipe, name) = construction
        .split_once(':')
        .ok_or_else(|| format!("constructions look like `<recipe>:<name>`, got `{construction}`"))?;
    let endo = || m.endomorphisms.get(name).ok_or_else(|| format!("unknown endomorphism `{name}`"));
    let e = |err: nijenhuis::Error| err.to_string();
    let alg = match recipe {
        "idempotent" => idempotent_algebroid(endo()?).map_err(e)?.algebroid,
        "complex" => complex_algebroid(endo()?).map_err(e)?.algebroid,
        "product" => product_algebroid(endo()?).map_err(e)?.algebroid,
        "foliation" => foliation_connection(endo()?).map_err(e)?.idempotent.algebroid,
        "invertible" => invertible_algebroid(endo()?).map_err(e)?,
        "connection" => {
            let f = m.sprays.get(name).ok_or_else(|| format!("unknown spray `{name}`"))?;
            let tc = tangent_chart(m.chart.dim() / 2).map_err(e)?;
            let s = semispray(&tc, f).map_err(e)?;
            let conn = connection_from_semispray(&tc, &s).map_err(e)?;
            connection_algebroid(&tc, &conn.gamma).map_err(e)?.idempotent.algebroid
        }
        "algebroid" => m.algebroids.get(name).cloned().ok_or_else(|| format!("unknown algebroid `{name}`"))?,
        other => return Err(format!("unknown recipe `{other}`")),
    };
    Ok((format!("{recipe}_{name}"), alg))
}

/// Splits a named derivation, or the de Rham operator of a named algebroid,
/// into `(K, L)`.
pub fn decompose(m: &Manifest, name: &str) -> Result<DerivationDeg1, String> {
    if let Some(images) = m.derivations.get(name) {
        return fn_decompose(&m.chart, &images.on_coordinates, &images.on_differentials).map_err(|e| e.to_string());
    }
    let alg = m.algebroids.get(name).ok_or_else(|| format!("unknown derivation or algebroid `{name}`"))?;
    nijenhuis::algebroid::derivation_from_algebroid(alg).map_err(|e| e.to_string())
}

/// Text rendering of an anchor and correction pair.
pub fn describe(id: &str, k: &VectorValuedForm, l: &VectorValuedForm) -> String {
    format!("{id}\n  anchor:     {k}\n  correction: {l}\n")
}
