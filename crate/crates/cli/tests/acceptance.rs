//! Exit gate: one PASS/FAIL line per acceptance criterion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use nijenhuis::algebroid::{
    check_axioms, check_bundle_axioms, check_cohomology, check_connection_decomposition, inverse_bracket_residuals,
    invertible_algebroid, verify_trivial_isomorphism, BundleAlgebroid, Residual, TangentAlgebroid, Vanishes,
};
use nijenhuis::calculus::random::{random_endomorphism, random_form, random_function};
use nijenhuis::calculus::{fn_bracket, nijenhuis_torsion, Chart, VectorField, VectorValuedForm};
use nijenhuis::scalar::ScalarExpr;
use nijenhuis::structures::{
    bigrade, complex_algebroid, complex_projectors, connection_algebroid, connection_from_semispray, d_components,
    fixtures, foliation_connection, idempotent_algebroid, idempotent_tensorial_operator, product_algebroid, reassemble,
    semispray, tangent_chart,
};
use nijenhuis::Error;
use nijenhuis_cli::checks::random_connection;
use nijenhuis_cli::{load_manifest, run_all, to_json, Settings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn all_vanish<T: Vanishes>(rs: &[Residual<T>], what: &str) -> Result<(), String> {
    match rs.iter().find(|r| !r.vanishes()) {
        None => Ok(()),
        Some(r) => Err(format!("{what}: {}({}) has {:?}", r.slot, r.args.join(", "), r.value.components())),
    }
}

fn core(e: Error) -> String {
    e.to_string()
}

fn half(chart: &Chart) -> ScalarExpr {
    chart.int(2).inv().expect("2 is invertible")
}

fn axioms_pass(alg: &TangentAlgebroid, what: &str) -> Result<(), String> {
    let r = check_axioms(alg, 2, 0).map_err(core)?;
    all_vanish(&r.leibniz, what)?;
    all_vanish(&r.jacobi, what)?;
    all_vanish(&r.anchor_morphism, what)?;
    all_vanish(&r.antisymmetry, what)
}

fn fn_machinery() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..20 {
        let dim = rng.gen_range(2..=4);
        let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        let chart = Chart::new(&names).map_err(core)?;
        let n = random_endomorphism(&chart, 2, &mut rng);
        let lhs = fn_bracket(&n, &n).map_err(core)?.scale(&half(&chart));
        ensure(lhs == nijenhuis_torsion(&n).map_err(core)?, format!("trial {trial} (dim {dim}): ½[N,N]_FN ≠ T_N"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs() < 10, format!("took {elapsed:?}"))?;
    Ok(format!("20 random endomorphisms in {} ms", elapsed.as_millis()))
}

fn idempotent_construction() -> Outcome {
    let built = idempotent_algebroid(&fixtures::n0()).map_err(core)?;
    let chart = built.algebroid.chart().clone();
    ensure(built.torsion.value_on_basis(&[2, 3]) == VectorField::basis(&chart, 0), "T(∂z,∂w) ≠ ∂x")?;
    let zw = built.algebroid.bracket(&VectorField::basis(&chart, 2), &VectorField::basis(&chart, 3)).map_err(core)?;
    ensure(zw.is_zero(), "[[∂z,∂w]] ≠ 0")?;
    ensure(built.bracket_forms.len() == 6, "expected 6 basis pairs")?;
    all_vanish(&built.bracket_forms, "projector form of the bracket")?;
    axioms_pass(&built.algebroid, "axioms")?;
    Ok("T(∂z,∂w) = ∂x, [[∂z,∂w]] = 0, 6 pairs agree, axioms hold".into())
}

fn torsion_suite() -> Outcome {
    let ops = idempotent_tensorial_operator(&fixtures::n0()).map_err(core)?;
    ensure(ops.fn_bracket_residual.is_zero(), "[N, −T_N]_FN ≠ 0")?;
    ensure(ops.rn_bracket_residual.is_zero(), "[T_N, T_N]_RN ≠ 0")?;
    ensure(ops.d1_report.passes(), "D₁ is not a cohomology operator")?;
    ensure(ops.d2_report.passes(), "D₂ is not a cohomology operator")?;
    Ok("[N,−T]_FN = 0, [T,T]_RN = 0, D₁ and D₂ square to zero".into())
}

fn invertible_suite() -> Outcome {
    let j2 = fixtures::j2();
    let chart = j2.chart().clone();
    let t = nijenhuis_torsion(&j2).map_err(core)?;
    let bare = TangentAlgebroid::new(j2.clone(), VectorValuedForm::zero(&chart, 2)).map_err(core)?;
    let report = check_cohomology(&bare.derivation()).map_err(core)?;
    ensure(!report.passes(), "(J2, 0) passed")?;
    ensure(report.condition1 == t, "condition1 of (J2, 0) differs from T_J2")?;
    let alg = invertible_algebroid(&j2).map_err(core)?;
    let expected = j2.inverse().map_err(core)?.compose(&t).map_err(core)?.neg();
    ensure(alg.correction() == &expected, "correction differs from −J2⁻¹T")?;
    ensure(check_cohomology(&alg.derivation()).map_err(core)?.passes(), "(J2, −J2⁻¹T) fails")?;
    all_vanish(&inverse_bracket_residuals(&j2, 2, 0).map_err(core)?, "[[X,Y]] = J⁻¹[JX,JY]")?;
    all_vanish(&verify_trivial_isomorphism(&alg, 2, 0).map_err(core)?, "isomorphism")?;
    Ok("(J2,0) fails with T_J2, (J2,−J2⁻¹T) passes, J⁻¹ is an isomorphism".into())
}

fn complex_suite() -> Outcome {
    for (name, j) in [("J0", fixtures::j0()), ("J1", fixtures::j1()), ("J2", fixtures::j2())] {
        let p = complex_projectors(&j).map_err(core)?;
        ensure(p.torsion_relation.is_zero(), format!("T_p⁺ ≠ −¼𝒯_J for {name}"))?;
    }
    for (name, j) in [("J0", fixtures::j0()), ("J1", fixtures::j1())] {
        let built = complex_algebroid(&j).map_err(core)?;
        axioms_pass(&built.algebroid, name)?;
        all_vanish(&built.bracket_forms, name)?;
        all_vanish(&built.holomorphic_involutivity, name)?;
    }
    match complex_algebroid(&fixtures::j2()) {
        Err(Error::TorsionNonzero { .. }) => {}
        Err(e) => return Err(format!("J2 rejected for the wrong reason: {e}")),
        Ok(_) => return Err("J2 accepted".into()),
    }
    Ok("torsion relation for J0, J1, J2; J0, J1 algebroids; J2 rejected".into())
}

fn product_suite() -> Outcome {
    for (name, p) in [("P0", fixtures::p0()), ("P1", fixtures::p1())] {
        let built = product_algebroid(&p).map_err(core)?;
        all_vanish(&built.torsion_relations, name)?;
        axioms_pass(&built.algebroid, name)?;
        all_vanish(&built.bracket_form, name)?;
    }
    Ok("T_p± = ¼T_P, axioms and bracket form for P0, P1".into())
}

fn foliation_suite() -> Outcome {
    let gamma = fixtures::gamma0();
    let chart = gamma.chart().clone();
    let fol = foliation_connection(&gamma).map_err(core)?;
    ensure(fol.curvature.value_on_basis(&[0, 1]) == VectorField::basis(&chart, 2), "R(∂x,∂y) ≠ ∂z")?;
    let parts = d_components(&gamma).map_err(core)?;
    ensure(parts.d01_report.passes(), "d₀,₁ fails")?;
    ensure(parts.d2m1_report.passes(), "d₂,₋₁ fails")?;
    ensure(!parts.d10_report.passes(), "d₁,₀ passes")?;
    ensure(parts.d10_report.condition1 == fol.curvature, "d₁,₀ residual differs from R")?;
    all_vanish(&parts.sum_residuals, "sum of components")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in 0..10 {
        let w = random_form(&chart, 1 + q % chart.dim(), 2, &mut rng);
        let pieces = bigrade(&w, &gamma).map_err(core)?;
        ensure(reassemble(&w, &pieces).map_err(core)? == w, format!("random form {q} does not reassemble"))?;
    }
    Ok("R(∂x,∂y) = ∂z; d₀,₁, d₂,₋₁ pass; d₁,₀ residual = R; sums and 10 bigradings".into())
}

fn tangent_suite() -> Outcome {
    for n in [1, 2] {
        let tc = tangent_chart(n).map_err(core)?;
        all_vanish(&tc.identities().map_err(core)?, &format!("canonical tensors, n = {n}"))?;
    }
    let tc = tangent_chart(1).map_err(core)?;
    let chart = tc.chart().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sprays = [
        ("S0", vec![chart.zero()]),
        ("S1", vec![chart.parse("-x").map_err(core)?]),
        ("random", vec![random_function(&chart, 2, &mut rng)]),
    ];
    for (name, f) in &sprays {
        let s = semispray(&tc, f).map_err(core)?;
        let conn = connection_from_semispray(&tc, &s).map_err(core)?;
        all_vanish(&conn.identities, name)?;
        let built = connection_algebroid(&tc, &conn.gamma).map_err(core)?;
        ensure(built.torsion_relation.is_zero(), format!("T_v ≠ ¼T_Γ for {name}"))?;
        axioms_pass(&built.idempotent.algebroid, name)?;
        all_vanish(&built.bracket_form, name)?;
        if *name == "S0" {
            let diag = VectorValuedForm::parse_matrix(&chart, &[vec!["1", "0"], vec!["0", "-1"]]).map_err(core)?;
            ensure(conn.gamma == diag, "S0 does not give Γ = diag(1, −1)")?;
        }
    }
    Ok("canonical tensors for n = 1, 2; S0, S1 and a random spray".into())
}

fn bundle_suite() -> Outcome {
    let chart = Chart::new(&["x"]).map_err(core)?;
    let anchor = vec![vec![chart.one()], vec![chart.coordinate(0)]];
    let balg = BundleAlgebroid::from_entries(&chart, anchor, vec![((0, 1, 0), chart.one())]).map_err(core)?;
    ensure(check_bundle_axioms(&balg).map_err(core)?.passes(), "structure functions fail the axioms")?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..3 {
        let conn = random_connection(&chart, 2, 2, &mut rng).map_err(core)?;
        all_vanish(&check_connection_decomposition(&conn, &balg).map_err(core)?, &format!("connection {k}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    loop {
        let mut entries = Vec::new();
        for a in 0..3 {
            for b in a + 1..3 {
                for c in 0..3 {
                    entries.push(((a, b, c), chart.int(rng.gen_range(-2..=2))));
                }
            }
        }
        let zero = vec![vec![chart.zero()]; 3];
        let broken = BundleAlgebroid::from_entries(&chart, zero, entries).map_err(core)?;
        let report = check_bundle_axioms(&broken).map_err(core)?;
        if let Some(r) = report.jacobi.iter().find(|r| !r.vanishes()) {
            ensure(!report.passes(), "a Jacobi violation went unreported")?;
            return Ok(format!("D = ∇ + ι_L for 3 connections; random c violates Jacobi at {}", r.args.join(", ")));
        }
    }
}

fn fixture_paths() -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut paths = Vec::new();
    for dir in [root.clone(), root.join("failing")] {
        let mut here: Vec<PathBuf> = std::fs::read_dir(&dir)
            .expect("fixture directory exists")
            .map(|e| e.expect("readable entry").path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        here.sort();
        paths.extend(here);
    }
    paths
}

fn suite_json() -> Result<String, String> {
    let mut out = String::new();
    for path in fixture_paths() {
        let m = load_manifest(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        out.push_str(&to_json(&run_all(&m, Settings::from_manifest(&m))));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let first = suite_json()?;
    let second = suite_json()?;
    ensure(first == second, "reports differ between runs")?;
    Ok(format!("{} fixture reports, {} bytes, identical", fixture_paths().len(), first.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("FN machinery on random endomorphisms", fn_machinery),
        ("idempotent algebroid of N0", idempotent_construction),
        ("torsion identities and D₁, D₂ for N0", torsion_suite),
        ("invertible anchor J2", invertible_suite),
        ("complex structures", complex_suite),
        ("product structures", product_suite),
        ("foliation γ0", foliation_suite),
        ("tangent bundle and semisprays", tangent_suite),
        ("bundle algebroid", bundle_suite),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
