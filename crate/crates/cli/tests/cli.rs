use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nijenhuis_cli::parse_manifest;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nijenhuis")).args(args).output().expect("binary runs")
}

fn run_on(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = vec![args[0], path.to_str().unwrap()];
    all.extend(&args[1..]);
    run(&all)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn residual<'a>(record: &'a Value, slot: &str, args: &[&str]) -> &'a Value {
    record["residuals"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| {
            r["slot"] == slot
                && r["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).eq(args.iter().copied())
        })
        .unwrap_or_else(|| panic!("no residual {slot}{args:?}"))
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(items) => items.iter().any(has_float),
        Value::Object(map) => map.values().any(has_float),
        _ => false,
    }
}

#[test]
fn shipped_fixtures_pass() {
    for name in ["f1.json", "f2.json", "f3.json", "f4.json", "f5.json", "f6.json", "bundle.json"] {
        let out = run_on(&["verify"], &fixture(name));
        assert_eq!(code(&out), 0, "{name}:\n{}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn failing_fixtures_exit_nonzero() {
    for (name, expected) in [
        ("failing/j2_zero_correction.json", 1),
        ("failing/jacobi_violation.json", 1),
        ("failing/j2_complex.json", 2),
        ("failing/n0_complex.json", 2),
    ] {
        let out = run_on(&["verify"], &fixture(name));
        assert_eq!(code(&out), expected, "{name}");
    }
}

#[test]
fn torsion_of_n0_names_the_nonzero_pair() {
    let out = run_on(&["torsion", "N", "--format", "json"], &fixture("f2.json"));
    assert_eq!(code(&out), 1);
    let report = json(&out);
    let record = &report["checks"][0];
    assert_eq!(record["status"], "fail");
    let zw = residual(record, "T", &["∂z", "∂w"]);
    assert_eq!(zw["value"], "(1) ∂x");
    assert_eq!(zw["components"], serde_json::json!([{"basis": "∂x", "coefficient": "1"}]));
    assert_eq!(residual(record, "T", &["∂x", "∂y"])["value"], "0");
}

#[test]
fn complex_on_j2_reports_the_torsion() {
    let out = run_on(&["verify", "--format", "json"], &fixture("failing/j2_complex.json"));
    assert_eq!(code(&out), 2);
    let record = &json(&out)["checks"][0];
    assert_eq!(record["status"], "error");
    assert!(record["message"].as_str().unwrap().contains("torsion is nonzero"));
    assert_eq!(residual(record, "T", &["∂x", "∂z"])["value"], "(1) ∂x");
}

#[test]
fn zero_correction_on_j2_fails_condition_one() {
    let out = run_on(&["verify", "--format", "json"], &fixture("failing/j2_zero_correction.json"));
    let record = &json(&out)["checks"][0];
    assert_eq!(record["status"], "fail");
    let c1 = residual(record, "D: ½[K,K]_FN + K∘L", &[]);
    assert_eq!(c1["components"][0], serde_json::json!({"basis": "dx∧dz ⊗ ∂x", "coefficient": "1"}));
}

#[test]
fn json_is_stable_and_integral() {
    let path = fixture("f4.json");
    let a = run_on(&["verify", "--format", "json"], &path);
    let b = run_on(&["verify", "--format", "json"], &path);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert!(!has_float(&report));
    assert_eq!(report["seed"], 7);
    assert_eq!(report["points"], 5);
    assert_eq!(report["summary"], serde_json::json!({"error": 0, "fail": 0, "pass": 2}));
}

#[test]
fn flags_override_manifest_settings() {
    let out = run_on(&["verify", "--format", "json", "--seed", "99", "--probe-degree", "1"], &fixture("f5.json"));
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["seed"], 99);
    assert_eq!(report["probe_degree"], 1);
}

#[test]
fn text_report_is_a_table() {
    let out = run_on(&["verify"], &fixture("f3.json"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check"));
    assert!(text.contains("product-P1"));
    assert!(text.contains("3 passed, 0 failed, 0 errors"));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(code(&run(&["verify", "/definitely/not/here.json"])), 2);
    let bad = scratch(
        "bad_expr.json",
        r#"{"chart": {"coords": ["x", "y"]}, "endomorphisms": {"A": [["x+*y", "0"], ["0", "1"]]}}"#,
    );
    let out = run_on(&["verify"], &bad);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("endomorphisms.A[0][0]") && err.contains("offset 2"), "{err}");
    let unknown = scratch("unknown_field.json", r#"{"chart": {"coords": ["x"]}, "colour": 3}"#);
    assert_eq!(code(&run_on(&["verify"], &unknown)), 2);
    assert_eq!(code(&run_on(&["torsion", "Q"], &fixture("f2.json"))), 2);
    assert_eq!(code(&run_on(&["build", "complex:J2"], &fixture("f6.json"))), 2);
    assert_eq!(code(&run_on(&["build", "J2"], &fixture("f6.json"))), 2);
}

#[test]
fn built_fragments_load_as_manifests() {
    for (path, construction) in [
        (fixture("f2.json"), "idempotent:N"),
        (fixture("f1.json"), "complex:J1"),
        (fixture("f3.json"), "product:P1"),
        (fixture("f4.json"), "foliation:gamma0"),
        (fixture("f6.json"), "invertible:J2"),
        (fixture("f5.json"), "connection:S1"),
    ] {
        let out = run_on(&["build", construction, "--format", "json"], &path);
        assert_eq!(code(&out), 0, "{construction}");
        let text = String::from_utf8(out.stdout).unwrap();
        let m = parse_manifest(&text).unwrap_or_else(|e| panic!("{construction}: {e}"));
        let id = construction.replace(':', "_");
        let source = parse_manifest(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let (_, expected) = nijenhuis_cli::build(&source, construction).unwrap();
        assert_eq!(m.algebroids[&id].anchor(), expected.anchor(), "{construction}");
        assert_eq!(m.algebroids[&id].correction(), expected.correction(), "{construction}");
    }
}

#[test]
fn decompose_recovers_anchor_and_correction() {
    let out = run_on(&["decompose", "N0", "--format", "json"], &fixture("f2.json"));
    assert_eq!(code(&out), 0);
    let fragment = json(&out);
    assert_eq!(fragment["endomorphisms"]["N0_anchor"][0], serde_json::json!(["1", "0", "0", "-z"]));
    assert_eq!(fragment["forms"]["N0_correction"]["entries"]["3,4"], serde_json::json!(["-1", "0", "0", "0"]));
}

#[test]
fn decompose_splits_a_derivation_given_by_images() {
    // D x = y dx, D y = 0, D dx = 0, D dy = dx∧dy: the Lie derivative along
    // K = y dx ⊗ ∂x plus an insertion term.
    let path = scratch(
        "derivation.json",
        r#"{
          "chart": {"coords": ["x", "y"]},
          "derivations": {
            "D": {
              "on_coordinates": [{"1": "y"}, {}],
              "on_differentials": [{}, {"1,2": "1"}]
            }
          },
          "checks": [{"kind": "decompose", "derivation": "D"}]
        }"#,
    );
    let out = run_on(&["decompose", "D", "--format", "json"], &path);
    assert_eq!(code(&out), 0);
    let fragment = json(&out);
    assert_eq!(fragment["endomorphisms"]["D_anchor"], serde_json::json!([["y", "0"], ["0", "0"]]));
    assert_eq!(code(&run_on(&["verify"], &path)), 0);
}
