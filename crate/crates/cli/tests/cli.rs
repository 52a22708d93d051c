use std::path::{Path, PathBuf};
use std::process::Command;

use hom_rbf::catalog::{d0, d1};
use hom_rbf::deform::LinearDeformation;
use hom_rbf::document::{catalog_document, Document, Object, Workspace};
use hom_rbf::matrix::Matrix;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn homrbf(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_homrbf"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn catalog_file(dir: &Path) -> PathBuf {
    write(dir, "catalog.json", &catalog_document().to_json())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_command_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = homrbf(&["catalog", "--out", s(dir.path())]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    for f in ["d0.json", "d1.json", "d2.json", "catalog.json"] {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        Workspace::from_json(&text).unwrap();
    }
    let text = std::fs::read_to_string(dir.path().join("d1.json")).unwrap();
    assert_eq!(
        Workspace::from_json(&text).unwrap().get("D1").unwrap(),
        &Object::OperatorFamily(d1())
    );
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = catalog_file(dir.path());
    let ok = homrbf(&["check", s(&cat), "--object", "D1"]);
    assert_eq!(ok.code, 0);
    assert!(ok.stdout.contains("PASS"));

    let unknown = homrbf(&["check", s(&cat), "--object", "nope"]);
    assert_eq!(unknown.code, 2);

    let bad = r#"{"objects":{"a":{"kind":"hom_algebra","dim":1,"mu":[[["1/0"]]],"p":[["1"]]}}}"#;
    let bad = write(dir.path(), "bad.json", bad);
    assert_eq!(homrbf(&["check", s(&bad), "--object", "a"]).code, 2);

    // e1 e1 = 2 e0 with p = id is still associative; e0 e0 = e1 breaks it.
    let mut doc: Value = serde_json::from_str(&catalog_document().to_json()).unwrap();
    doc["objects"]["C2_group_algebra"]["mu"][0][0] = serde_json::json!(["0", "1"]);
    let perturbed = write(dir.path(), "perturbed.json", &doc.to_string());
    let run = homrbf(&["check", s(&perturbed), "--object", "C2_group_algebra", "--json"]);
    assert_eq!(run.code, 1);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
    let violations = report["laws"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["violations"].as_array().unwrap().len())
        .sum::<usize>();
    assert!(violations > 0);
}

#[test]
fn induce_outputs_reload_and_pass() {
    let dir = tempfile::tempdir().unwrap();
    let cat = catalog_file(dir.path());
    let run = homrbf(&[
        "induce",
        s(&cat),
        "--object",
        "C2_group_algebra",
        "--what",
        "tensor_omega",
        "--omega",
        "D1.omega",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let ws = Workspace::from_json(&run.stdout).unwrap();
    match ws.get("C2_group_algebra.tensor_omega").unwrap() {
        Object::HomAlgebra(a) => assert_eq!(a.dim(), 4),
        other => panic!("unexpected {}", other.kind()),
    }
    let out = write(dir.path(), "tensor.json", &run.stdout);
    assert_eq!(
        homrbf(&["check", s(&out), "--object", "C2_group_algebra.tensor_omega"]).code,
        0
    );

    for what in [
        "semidirect",
        "ns_family",
        "omega_assoc",
        "pack_operator",
        "operator_bimodule",
    ] {
        let run = homrbf(&["induce", s(&cat), "--object", "D1", "--what", what]);
        assert_eq!(run.code, 0, "{what}: {}", run.stderr);
        // Re-emitting the parsed document reproduces it exactly.
        let doc = Document::from_json(&run.stdout).unwrap();
        assert_eq!(Workspace::load(&doc).unwrap().to_document(), doc, "{what}");
        let f = write(dir.path(), &format!("{what}.json"), &run.stdout);
        assert_eq!(
            homrbf(&["check", s(&f), "--object", &format!("D1.{what}")]).code,
            0,
            "{what}"
        );
    }

    let run = homrbf(&["induce", s(&cat), "--object", "D0", "--what", "ns_family"]);
    assert_eq!(run.code, 0);
    match Workspace::from_json(&run.stdout).unwrap().get("D0.ns_family").unwrap() {
        Object::NsFamily(g) => {
            assert!(g.prec(0).is_zero() && g.succ(0).is_zero() && g.vee(0, 0).is_zero());
        }
        other => panic!("unexpected {}", other.kind()),
    }

    assert_eq!(
        homrbf(&["induce", s(&cat), "--object", "D1", "--what", "unknown"]).code,
        2
    );
    assert_eq!(
        homrbf(&["induce", s(&cat), "--object", "D1", "--what", "pack_ns"]).code,
        2
    );
}

#[test]
fn cohomology_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cat = catalog_file(dir.path());
    let run = homrbf(&["cohomology", s(&cat), "--object", "D0", "--degree", "1", "--json"]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"complex":"rbf","degree":1,"dimC":1,"dimZ":1,"dimB":0,"dimH":1})
    );

    let run = homrbf(&["cohomology", s(&cat), "--object", "D1", "--degree", "1", "--json"]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"complex":"rbf","degree":1,"dimC":16,"dimZ":0,"dimB":0,"dimH":0})
    );

    let run = homrbf(&["cohomology", s(&cat), "--object", "D1", "--degree", "3"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("estimated"), "{}", run.stderr);

    let run = homrbf(&[
        "cohomology",
        s(&cat),
        "--object",
        "D0",
        "--degree",
        "3",
        "--max-entries",
        "100",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("dim H = 1"));
}

fn deformation_file(dir: &Path, name: &str, d: LinearDeformation) -> PathBuf {
    write(dir, name, &Document::single("def", &Object::Deformation(d)).to_json())
}

#[test]
fn deform_modes() {
    let dir = tempfile::tempdir().unwrap();
    let zero = LinearDeformation::new(d1(), vec![Matrix::zeros(4, 2); 2]).unwrap();
    let f = deformation_file(dir.path(), "zero.json", zero);
    assert_eq!(
        homrbf(&["deform", s(&f), "--object", "def", "--mode", "infinitesimal"]).code,
        0
    );
    assert_eq!(
        homrbf(&["deform", s(&f), "--object", "def", "--mode", "ns_family"]).code,
        0
    );
    assert_eq!(
        homrbf(&["deform", s(&f), "--object", "def", "--mode", "trivialize"]).code,
        0
    );

    let run = homrbf(&["deform", s(&f), "--object", "def", "--mode", "rigidity", "--json"]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["verdict"], "sufficient_condition_met");
    assert_eq!(v["dim_z1"], 0);

    let d0_zero = LinearDeformation::new(d0(), vec![Matrix::zeros(1, 1)]).unwrap();
    let f0 = deformation_file(dir.path(), "d0.json", d0_zero);
    let run = homrbf(&["deform", s(&f0), "--object", "def", "--mode", "rigidity", "--json"]);
    assert_eq!(run.code, 1);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["dim_h1"], 1);

    // An arbitrary direction on D0 is a cocycle (the differential vanishes)
    // but not a coboundary.
    let nonzero = LinearDeformation::new(d0(), vec![Matrix::identity(1)]).unwrap();
    let f1 = deformation_file(dir.path(), "nz.json", nonzero);
    assert_eq!(
        homrbf(&["deform", s(&f1), "--object", "def", "--mode", "infinitesimal"]).code,
        0
    );
    let run = homrbf(&["deform", s(&f1), "--object", "def", "--mode", "trivialize"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("not a coboundary"));

    let missing = r#"{"objects":{"def":{"kind":"deformation","base":"R","direction":{"maps":[[["0"]]]},"order":3}}}"#;
    let m = write(dir.path(), "missing.json", missing);
    let run = homrbf(&["deform", s(&m), "--object", "def", "--mode", "infinitesimal"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("\"R\""), "{}", run.stderr);

    assert_eq!(
        homrbf(&["deform", s(&f), "--object", "def", "--mode", "nijenhuis"]).code,
        2
    );
}

#[test]
fn verify_suite_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let cat = catalog_file(dir.path());
    let run = homrbf(&["verify-suite", s(&cat)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("0 failing: PASS"));

    let empty = write(dir.path(), "empty.json", r#"{"objects":{}}"#);
    let run = homrbf(&["verify-suite", s(&empty)]);
    assert_eq!(run.code, 0);
    assert!(run.stderr.contains("warning"));

    let mut doc: Value = serde_json::from_str(&catalog_document().to_json()).unwrap();
    doc["objects"]["D1"]["maps"][0][0][0] = Value::String("2".into());
    let corrupted = write(dir.path(), "corrupted.json", &doc.to_string());
    let run = homrbf(&["verify-suite", s(&corrupted)]);
    assert_eq!(run.code, 1);
    let first = run.stdout.lines().next().unwrap();
    assert_eq!(first, "first failing property: D1: operator family check");
}
