use std::path::{Path, PathBuf};

use ellipsoid_cli::{run, ExitStatus};
use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn call(args: &[&str]) -> (ExitStatus, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ellipsoid").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn feasible_json_report() {
    let path = problem("quadrant.json");
    let (status, out, _) = call(&["--input", path.to_str().unwrap(), "--output", "json", "--verify"]);
    assert_eq!(status, ExitStatus::Feasible);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "feasible");
    assert_eq!(v["certified"], true);
    assert_eq!(v["oracle"], "agree");
    let p: Vec<f64> = serde_json::from_value(v["point"].clone()).unwrap();
    assert!(p[0] >= 0.5 - 1e-9 && p[1] >= 0.5 - 1e-9);
}

#[test]
fn disjoint_text_report() {
    let path = problem("disjoint.json");
    let (status, out, _) = call(&["--input", path.to_str().unwrap(), "--epsilon", "1e-6", "--verify"]);
    assert_eq!(status, ExitStatus::NotFound);
    assert!(out.starts_with("status: volume exhausted"), "{out}");
    assert!(out.contains("oracle: agree"));
}

#[test]
fn iteration_cap_is_not_found() {
    let path = problem("disjoint.json");
    let (status, out, _) =
        call(&["--input", path.to_str().unwrap(), "--max-iter", "3", "--output", "json"]);
    assert_eq!(status, ExitStatus::NotFound);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "iteration_cap");
    assert_eq!(v["iterations"], 3);
}

#[test]
fn malformed_inputs_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", r#"{"dim": 2, "radius": 1, "constraints": [}"#, "line"),
        ("length.json", r#"{"dim": 2, "radius": 1, "constraints": [{"a": [1], "b": 0, "sense": ">="}]}"#, "constraints[0].a"),
        ("zero.json", r#"{"dim": 2, "radius": 1, "constraints": [{"a": [0, 0], "b": 0, "sense": "<="}]}"#, "constraints[0]"),
        ("radius.json", r#"{"dim": 2, "radius": -1, "constraints": []}"#, "radius"),
        ("unknown.json", r#"{"dim": 2, "radius": 1, "extra": 3}"#, "extra"),
    ];
    for (name, body, needle) in cases {
        let p = write(dir.path(), name, body);
        let (status, _, err) = call(&["--input", p.to_str().unwrap()]);
        assert_eq!(status, ExitStatus::InputError, "{name}");
        assert!(err.contains(needle), "{name}: {err}");
    }
}

#[test]
fn bad_flags_are_input_errors() {
    let path = problem("quadrant.json");
    let path = path.to_str().unwrap();
    assert_eq!(call(&["--input", path, "--epsilon", "-1"]).0, ExitStatus::InputError);
    assert_eq!(call(&["--input", path, "--tol", "nan"]).0, ExitStatus::InputError);
    assert_eq!(call(&["--input", path, "--output", "xml"]).0, ExitStatus::InputError);
    assert_eq!(call(&[]).0, ExitStatus::InputError);
}

#[test]
fn json_input_error_still_prints_status() {
    let (status, out, _) = call(&["--input", "/nonexistent/problem.json", "--output", "json"]);
    assert_eq!(status, ExitStatus::InputError);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "input_error");
}

#[test]
fn svg_requires_two_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "cube.json",
        r#"{"dim": 3, "radius": 1, "constraints": [{"a": [1, 0, 0], "b": 0.2, "sense": ">="}]}"#,
    );
    let svg = dir.path().join("out.svg");
    let (status, _, _) = call(&["--input", p.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert_eq!(status, ExitStatus::InputError);
    assert!(!svg.exists());
}

#[test]
fn trace_has_one_record_per_visited_ellipsoid() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.ndjson");
    let path = problem("single_cut.json");
    let (status, out, _) = call(&[
        "--input",
        path.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert_eq!(status, ExitStatus::Feasible);
    let v: Value = serde_json::from_str(&out).unwrap();
    let iterations = v["iterations"].as_u64().unwrap() as usize;
    let lines: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), iterations + 1);
    assert_eq!(lines[0]["violated_index"], 0);
    assert!(lines.last().unwrap()["violated_index"].is_null());
    assert!(lines.last().unwrap()["cut_quadratic_form"].is_null());
}
