//! Manifest files: a chart, named tensors built on it, and the checks to run.
//!
//! Endomorphisms are square matrices of expression strings where entry
//! `[i][j]` is the coefficient of `∂_i` in the image of `∂_j`, so each
//! column is the image of one coordinate field. Multi-indices are written
//! 1-based, as in `"1,3"`.

use std::collections::BTreeMap;
use std::path::Path;

use nijenhuis::algebroid::{invertible_algebroid, BundleAlgebroid, TangentAlgebroid};
use nijenhuis::calculus::{nijenhuis_torsion, Chart, KForm, VectorValuedForm};
use nijenhuis::scalar::ScalarExpr;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed manifest at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{at}: {source}")]
    Expression { at: String, source: nijenhuis::Error },
    #[error("{at}: unknown {what} `{name}`")]
    Unresolved { at: String, what: &'static str, name: String },
    #[error("{at}: {message}")]
    Shape { at: String, message: String },
}

type Result<T, E = ManifestError> = std::result::Result<T, E>;

fn shape(at: impl Into<String>, message: impl Into<String>) -> ManifestError {
    ManifestError::Shape { at: at.into(), message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    coords: Vec<String>,
    #[serde(default)]
    complex: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoefficient {
    Scalar(String),
    Vector(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    degree: usize,
    #[serde(default)]
    entries: BTreeMap<String, RawCoefficient>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebroid {
    anchor: String,
    correction: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    rank: usize,
    anchor: Vec<Vec<String>>,
    #[serde(default)]
    structure: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDerivation {
    on_coordinates: Vec<BTreeMap<String, String>>,
    on_differentials: Vec<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    chart: RawChart,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    probe_degree: Option<u32>,
    #[serde(default)]
    points: Option<u32>,
    #[serde(default)]
    endomorphisms: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    forms: BTreeMap<String, RawForm>,
    #[serde(default)]
    algebroids: BTreeMap<String, RawAlgebroid>,
    #[serde(default)]
    bundle_algebroids: BTreeMap<String, RawBundle>,
    #[serde(default)]
    derivations: BTreeMap<String, RawDerivation>,
    #[serde(default)]
    sprays: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

/// One entry of the `checks` list.
#[derive(Clone, Debug, Deserialize)]
pub struct CheckSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub kind: CheckKind,
}

fn default_random_forms() -> usize {
    10
}

fn default_random_connections() -> usize {
    3
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CheckKind {
    /// `T_N` against expected values (zero unless listed), and
    /// `½[N, N]_FN = T_N`.
    Torsion {
        endo: String,
        #[serde(default)]
        expect: BTreeMap<String, Vec<String>>,
    },
    Cohomology {
        algebroid: String,
    },
    Axioms {
        algebroid: String,
    },
    Idempotent {
        endo: String,
    },
    Complex {
        endo: String,
        #[serde(default)]
        eps: Option<String>,
    },
    Product {
        endo: String,
        #[serde(default)]
        eps: Option<String>,
    },
    Foliation {
        endo: String,
        #[serde(default)]
        expect: BTreeMap<String, Vec<String>>,
        #[serde(default = "default_random_forms")]
        random_forms: usize,
    },
    Tangent {
        #[serde(default)]
        sprays: Vec<String>,
        #[serde(default)]
        random_sprays: usize,
    },
    Bundle {
        bundle: String,
        #[serde(default = "default_random_connections")]
        random_connections: usize,
    },
    /// Either a named derivation, split into `(K, L)`, or an algebroid whose
    /// de Rham operator is rebuilt from the bracket and split again.
    Decompose {
        derivation: String,
    },
    Isomorphism {
        endo: String,
    },
}

impl CheckKind {
    pub fn label(&self) -> &'static str {
        match self {
            CheckKind::Torsion { .. } => "torsion",
            CheckKind::Cohomology { .. } => "cohomology",
            CheckKind::Axioms { .. } => "axioms",
            CheckKind::Idempotent { .. } => "idempotent",
            CheckKind::Complex { .. } => "complex",
            CheckKind::Product { .. } => "product",
            CheckKind::Foliation { .. } => "foliation",
            CheckKind::Tangent { .. } => "tangent",
            CheckKind::Bundle { .. } => "bundle",
            CheckKind::Decompose { .. } => "decompose",
            CheckKind::Isomorphism { .. } => "isomorphism",
        }
    }

    /// The manifest entry the check is about.
    pub fn subject(&self) -> String {
        match self {
            CheckKind::Torsion { endo, .. }
            | CheckKind::Idempotent { endo }
            | CheckKind::Complex { endo, .. }
            | CheckKind::Product { endo, .. }
            | CheckKind::Foliation { endo, .. }
            | CheckKind::Isomorphism { endo } => endo.clone(),
            CheckKind::Cohomology { algebroid } | CheckKind::Axioms { algebroid } => algebroid.clone(),
            CheckKind::Bundle { bundle, .. } => bundle.clone(),
            CheckKind::Decompose { derivation } => derivation.clone(),
            CheckKind::Tangent { sprays, random_sprays } => {
                let mut parts = sprays.clone();
                if *random_sprays > 0 {
                    parts.push(format!("{random_sprays} random"));
                }
                parts.join(", ")
            }
        }
    }
}

/// A named form, scalar- or vector-valued.
#[derive(Clone, Debug, PartialEq)]
pub enum FormValue {
    Scalar(KForm),
    Vector(VectorValuedForm),
}

/// A degree-one derivation given by its values on coordinates and their
/// differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationImages {
    pub on_coordinates: Vec<KForm>,
    pub on_differentials: Vec<KForm>,
}

/// A validated manifest with every name resolved.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub chart: Chart,
    pub seed: u64,
    pub probe_degree: u32,
    pub points: u32,
    pub endomorphisms: BTreeMap<String, VectorValuedForm>,
    pub forms: BTreeMap<String, FormValue>,
    pub algebroids: BTreeMap<String, TangentAlgebroid>,
    pub bundle_algebroids: BTreeMap<String, BundleAlgebroid>,
    pub derivations: BTreeMap<String, DerivationImages>,
    pub sprays: BTreeMap<String, Vec<ScalarExpr>>,
    pub checks: Vec<CheckSpec>,
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_PROBE_DEGREE: u32 = 2;
pub const DEFAULT_POINTS: u32 = 5;

/// The algebroid `(Id, 0)`, available under this name unless the manifest
/// defines its own.
pub const TRIVIAL: &str = "trivial";

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ManifestError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_manifest(&text)
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let raw: RawManifest = serde_json::from_str(text).map_err(|e| ManifestError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    resolve(raw)
}

fn expr(chart: &Chart, at: &str, text: &str) -> Result<ScalarExpr> {
    chart.parse(text).map_err(|source| ManifestError::Expression { at: at.to_string(), source })
}

fn core(at: &str) -> impl Fn(nijenhuis::Error) -> ManifestError + '_ {
    move |source| ManifestError::Expression { at: at.to_string(), source }
}

/// Parses `"1,3"` into `[0, 2]`; the empty string is the empty index.
pub fn parse_index(chart: &Chart, at: &str, key: &str) -> Result<Vec<usize>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|part| {
            let v: usize = part.trim().parse().map_err(|_| shape(at, format!("bad multi-index `{key}`")))?;
            if v == 0 || v > chart.dim() {
                return Err(shape(at, format!("index {v} outside 1..={}", chart.dim())));
            }
            Ok(v - 1)
        })
        .collect()
}

pub fn parse_matrix(chart: &Chart, at: &str, rows: &[Vec<String>]) -> Result<VectorValuedForm> {
    let n = chart.dim();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(shape(at, format!("expected a {n}×{n} matrix")));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            out.push(expr(chart, &format!("{at}[{i}][{j}]"), e)?);
        }
        parsed.push(out);
    }
    VectorValuedForm::from_matrix(chart, parsed).map_err(core(at))
}

/// Vector-valued values keyed by multi-index, for instance expected torsion
/// entries.
pub fn parse_vector_entries(
    chart: &Chart,
    at: &str,
    degree: usize,
    entries: &BTreeMap<String, Vec<String>>,
) -> Result<VectorValuedForm> {
    let n = chart.dim();
    let mut comps: Vec<Vec<(Vec<usize>, ScalarExpr)>> = vec![Vec::new(); n];
    for (key, values) in entries {
        let here = format!("{at}.{key}");
        let idx = parse_index(chart, &here, key)?;
        if idx.len() != degree {
            return Err(shape(&here, format!("expected {degree} indices")));
        }
        if values.len() != n {
            return Err(shape(&here, format!("expected {n} components")));
        }
        for (j, v) in values.iter().enumerate() {
            comps[j].push((idx.clone(), expr(chart, &format!("{here}[{j}]"), v)?));
        }
    }
    let forms = comps
        .into_iter()
        .map(|entries| KForm::from_coeffs(chart, degree, entries))
        .collect::<nijenhuis::Result<Vec<_>>>()
        .map_err(core(at))?;
    VectorValuedForm::from_components(chart, forms).map_err(core(at))
}

fn parse_scalar_entries(chart: &Chart, at: &str, degree: usize, entries: &BTreeMap<String, String>) -> Result<KForm> {
    let mut parsed = Vec::new();
    for (key, v) in entries {
        let here = format!("{at}.{key}");
        let idx = parse_index(chart, &here, key)?;
        parsed.push((idx, expr(chart, &here, v)?));
    }
    KForm::from_coeffs(chart, degree, parsed).map_err(core(at))
}

fn parse_form(chart: &Chart, at: &str, raw: &RawForm) -> Result<FormValue> {
    let mut scalars = BTreeMap::new();
    let mut vectors = BTreeMap::new();
    for (key, c) in &raw.entries {
        match c {
            RawCoefficient::Scalar(s) => {
                scalars.insert(key.clone(), s.clone());
            }
            RawCoefficient::Vector(v) => {
                vectors.insert(key.clone(), v.clone());
            }
        }
    }
    match (scalars.is_empty(), vectors.is_empty()) {
        (_, true) => Ok(FormValue::Scalar(parse_scalar_entries(chart, at, raw.degree, &scalars)?)),
        (true, false) => Ok(FormValue::Vector(parse_vector_entries(chart, at, raw.degree, &vectors)?)),
        (false, false) => Err(shape(at, "mixes scalar and vector-valued entries")),
    }
}

fn correction(
    at: &str,
    anchor: &VectorValuedForm,
    name: &str,
    forms: &BTreeMap<String, FormValue>,
) -> Result<VectorValuedForm> {
    let chart = anchor.chart();
    match name.strip_prefix("auto:") {
        Some("zero") => Ok(VectorValuedForm::zero(chart, 2)),
        Some("idempotent") => Ok(nijenhuis_torsion(anchor).map_err(core(at))?.neg()),
        Some("invertible") => Ok(invertible_algebroid(anchor).map_err(core(at))?.correction().clone()),
        Some(other) => Err(shape(at, format!("unknown correction recipe `{other}` (zero, idempotent, invertible)"))),
        None => match forms.get(name) {
            Some(FormValue::Vector(l)) if l.degree() == 2 => Ok(l.clone()),
            // A form without entries carries no values to tell its kind by.
            Some(FormValue::Scalar(w)) if w.degree() == 2 && w.is_zero() => Ok(VectorValuedForm::zero(chart, 2)),
            Some(_) => Err(shape(at, format!("`{name}` is not a vector-valued 2-form"))),
            None => Err(ManifestError::Unresolved { at: at.into(), what: "form", name: name.into() }),
        },
    }
}

fn resolve(raw: RawManifest) -> Result<Manifest> {
    let chart = if raw.chart.complex { Chart::complex(&raw.chart.coords) } else { Chart::new(&raw.chart.coords) }
        .map_err(core("chart"))?;

    let mut endomorphisms = BTreeMap::new();
    for (name, rows) in &raw.endomorphisms {
        endomorphisms.insert(name.clone(), parse_matrix(&chart, &format!("endomorphisms.{name}"), rows)?);
    }

    let mut forms = BTreeMap::new();
    for (name, f) in &raw.forms {
        forms.insert(name.clone(), parse_form(&chart, &format!("forms.{name}"), f)?);
    }

    let mut algebroids = BTreeMap::new();
    for (name, a) in &raw.algebroids {
        let at = format!("algebroids.{name}");
        let anchor = endomorphisms.get(&a.anchor).ok_or_else(|| ManifestError::Unresolved {
            at: at.clone(),
            what: "endomorphism",
            name: a.anchor.clone(),
        })?;
        let l = correction(&at, anchor, &a.correction, &forms)?;
        algebroids.insert(name.clone(), TangentAlgebroid::new(anchor.clone(), l).map_err(core(&at))?);
    }
    if !algebroids.contains_key(TRIVIAL) {
        algebroids.insert(TRIVIAL.to_string(), TangentAlgebroid::trivial(&chart));
    }

    let mut bundle_algebroids = BTreeMap::new();
    for (name, b) in &raw.bundle_algebroids {
        let at = format!("bundle_algebroids.{name}");
        if b.anchor.len() != b.rank || b.anchor.iter().any(|r| r.len() != chart.dim()) {
            return Err(shape(&at, format!("anchor must be {}×{}", b.rank, chart.dim())));
        }
        let mut anchor = Vec::new();
        for (a, row) in b.anchor.iter().enumerate() {
            let mut out = Vec::new();
            for (i, e) in row.iter().enumerate() {
                out.push(expr(&chart, &format!("{at}.anchor[{a}][{i}]"), e)?);
            }
            anchor.push(out);
        }
        let mut entries = Vec::new();
        for (key, e) in &b.structure {
            let here = format!("{at}.structure.{key}");
            let inner = key
                .strip_prefix("c[")
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| shape(&here, "structure keys look like `c[a,b,c]`"))?;
            let idx: Vec<usize> = inner
                .split(',')
                .map(|p| p.trim().parse::<usize>().ok().filter(|&v| v >= 1 && v <= b.rank).map(|v| v - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| shape(&here, format!("indices must lie in 1..={}", b.rank)))?;
            if idx.len() != 3 {
                return Err(shape(&here, "structure keys carry three indices"));
            }
            entries.push(((idx[0], idx[1], idx[2]), expr(&chart, &here, e)?));
        }
        let balg = BundleAlgebroid::from_entries(&chart, anchor, entries).map_err(core(&at))?;
        bundle_algebroids.insert(name.clone(), balg);
    }

    let mut derivations = BTreeMap::new();
    for (name, d) in &raw.derivations {
        let at = format!("derivations.{name}");
        if d.on_coordinates.len() != chart.dim() || d.on_differentials.len() != chart.dim() {
            return Err(shape(&at, format!("expected {} images of each kind", chart.dim())));
        }
        let on_coordinates = d
            .on_coordinates
            .iter()
            .enumerate()
            .map(|(j, e)| parse_scalar_entries(&chart, &format!("{at}.on_coordinates[{j}]"), 1, e))
            .collect::<Result<Vec<_>>>()?;
        let on_differentials = d
            .on_differentials
            .iter()
            .enumerate()
            .map(|(j, e)| parse_scalar_entries(&chart, &format!("{at}.on_differentials[{j}]"), 2, e))
            .collect::<Result<Vec<_>>>()?;
        derivations.insert(name.clone(), DerivationImages { on_coordinates, on_differentials });
    }

    let mut sprays = BTreeMap::new();
    for (name, coeffs) in &raw.sprays {
        let at = format!("sprays.{name}");
        if coeffs.len() * 2 != chart.dim() {
            return Err(shape(&at, format!("expected {} coefficients", chart.dim() / 2)));
        }
        let parsed = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| expr(&chart, &format!("{at}[{i}]"), c))
            .collect::<Result<Vec<_>>>()?;
        sprays.insert(name.clone(), parsed);
    }

    let manifest = Manifest {
        chart,
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        probe_degree: raw.probe_degree.unwrap_or(DEFAULT_PROBE_DEGREE),
        points: raw.points.unwrap_or(DEFAULT_POINTS),
        endomorphisms,
        forms,
        algebroids,
        bundle_algebroids,
        derivations,
        sprays,
        checks: raw.checks,
    };
    for (i, check) in manifest.checks.iter().enumerate() {
        validate_check(&manifest, &format!("checks[{i}]"), &check.kind)?;
    }
    Ok(manifest)
}

fn validate_check(m: &Manifest, at: &str, kind: &CheckKind) -> Result<()> {
    let missing = |what: &'static str, name: &str| ManifestError::Unresolved { at: at.into(), what, name: name.into() };
    match kind {
        CheckKind::Torsion { endo, expect } => {
            m.endomorphisms.get(endo).ok_or_else(|| missing("endomorphism", endo))?;
            parse_vector_entries(&m.chart, &format!("{at}.expect"), 2, expect)?;
        }
        CheckKind::Foliation { endo, expect, .. } => {
            m.endomorphisms.get(endo).ok_or_else(|| missing("endomorphism", endo))?;
            parse_vector_entries(&m.chart, &format!("{at}.expect"), 2, expect)?;
        }
        CheckKind::Idempotent { endo } | CheckKind::Isomorphism { endo } => {
            m.endomorphisms.get(endo).ok_or_else(|| missing("endomorphism", endo))?;
        }
        CheckKind::Complex { endo, eps } | CheckKind::Product { endo, eps } => {
            m.endomorphisms.get(endo).ok_or_else(|| missing("endomorphism", endo))?;
            if let Some(e) = eps {
                expr(&m.chart, &format!("{at}.eps"), e)?;
            }
        }
        CheckKind::Cohomology { algebroid } | CheckKind::Axioms { algebroid } => {
            m.algebroids.get(algebroid).ok_or_else(|| missing("algebroid", algebroid))?;
        }
        CheckKind::Bundle { bundle, .. } => {
            m.bundle_algebroids.get(bundle).ok_or_else(|| missing("bundle algebroid", bundle))?;
        }
        CheckKind::Decompose { derivation } => {
            if !m.derivations.contains_key(derivation) && !m.algebroids.contains_key(derivation) {
                return Err(missing("derivation or algebroid", derivation));
            }
        }
        CheckKind::Tangent { sprays, .. } => {
            if !m.chart.dim().is_multiple_of(2) || m.chart.dim() == 0 {
                return Err(shape(at, "tangent checks need a chart (x…, u…) of even dimension"));
            }
            for s in sprays {
                m.sprays.get(s).ok_or_else(|| missing("spray", s))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nijenhuis::calculus::VectorField;

    const N0: &str = r#"{
        "chart": {"coords": ["x", "y", "z", "w"]},
        "endomorphisms": {"N": [["1","0","0","-z"],["0","1","0","0"],["0","0","0","0"],["0","0","0","0"]]},
        "checks": [{"kind": "torsion", "endo": "N"}]
    }"#;

    #[test]
    fn loads_n0() {
        let m = parse_manifest(N0).unwrap();
        assert_eq!(m.chart.dim(), 4);
        assert_eq!(m.endomorphisms.len(), 1);
        let n = &m.endomorphisms["N"];
        let w_image = n.apply(&VectorField::basis(&m.chart, 3)).unwrap();
        assert_eq!(w_image, VectorField::parse(&m.chart, &["-z", "0", "0", "0"]).unwrap());
        assert_eq!((m.seed, m.probe_degree, m.points), (0, 2, 5));
        assert!(m.algebroids.contains_key(TRIVIAL));
    }

    #[test]
    fn reports_expression_offset() {
        let text = N0.replace("\"-z\"", "\"x+*y\"");
        match parse_manifest(&text) {
            Err(ManifestError::Expression { at, source: nijenhuis::Error::Syntax { offset, .. } }) => {
                assert_eq!(at, "endomorphisms.N[0][3]");
                assert_eq!(offset, 2);
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn reports_json_location() {
        match parse_manifest("{\n  \"chart\": [}") {
            Err(ManifestError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a JSON error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unresolved_and_misshapen() {
        let text = N0.replace("\"endo\": \"N\"", "\"endo\": \"M\"");
        assert!(matches!(parse_manifest(&text), Err(ManifestError::Unresolved { .. })));
        let text = N0.replace("[\"0\",\"0\",\"0\",\"0\"]]", "[\"0\",\"0\",\"0\"]]");
        assert!(matches!(parse_manifest(&text), Err(ManifestError::Shape { .. })));
    }

    #[test]
    fn forms_and_bundles() {
        let text = r#"{
            "chart": {"coords": ["x", "y"]},
            "forms": {
                "w": {"degree": 2, "entries": {"1,2": "x"}},
                "L": {"degree": 2, "entries": {"1,2": ["0", "y"]}}
            },
            "endomorphisms": {"Id": [["1","0"],["0","1"]]},
            "algebroids": {"A": {"anchor": "Id", "correction": "L"}},
            "bundle_algebroids": {"B": {"rank": 2, "anchor": [["1","0"],["x","0"]], "structure": {"c[1,2,1]": "1"}}}
        }"#;
        let m = parse_manifest(text).unwrap();
        assert!(matches!(m.forms["w"], FormValue::Scalar(_)));
        assert!(!m.algebroids["A"].correction().is_zero());
        assert_eq!(m.bundle_algebroids["B"].structure(1, 0, 0), &m.chart.int(-1));
        let bad = text.replace("c[1,2,1]", "c[1,3,1]");
        assert!(matches!(parse_manifest(&bad), Err(ManifestError::Shape { .. })));
    }
}
