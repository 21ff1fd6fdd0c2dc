use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geomquant"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn geomquant")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The example r-matrix with one coefficient of `A2` changed.
fn perturbed(dir: &TempDir) -> PathBuf {
    let text = std::fs::read_to_string(data("example_r.json")).unwrap();
    let bad = text.replacen("\"-x1\",", "\"-x1 + x3\",", 1);
    assert_ne!(bad, text);
    let p = dir.path().join("perturbed.json");
    std::fs::write(&p, bad).unwrap();
    p
}

#[test]
fn check_cybe_exit_codes() {
    let ok = run(&["check-cybe", path_str(&data("example_r.json"))]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    assert!(stdout(&ok).contains("PASS"));
    for eps in ["1", "0"] {
        assert_eq!(code(&run(&["check-cybe", path_str(&data("example_r.json")), "--epsilon", eps])), 0);
    }
    assert_eq!(code(&run(&["check-cybe", path_str(&data("rack_r.json"))])), 0);
    assert_eq!(code(&run(&["check-cybe", "/nonexistent/r.json"])), 2);
    assert_eq!(code(&run(&["check-cybe", path_str(&data("example_r.json")), "--epsilon", "nonsense"])), 2);
}

#[test]
fn perturbation_is_reported_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let p = perturbed(&dir);
    let o = run(&["check-cybe", path_str(&p), "--epsilon", "1", "--format", "structured"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fail");
    let item = &v["items"][0];
    assert_eq!(item["passed"], false);
    let w = item["witness"].as_array().unwrap();
    assert!(!w.is_empty());
    assert!(w[0]["location"].as_str().unwrap().starts_with("d/d"));
    assert!(!w[0]["residual"].as_str().unwrap().is_empty());
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"dimension\": 3,\n  \"a_terms\": [,]\n}").unwrap();
    let o = run(&["check-cybe", path_str(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3, column 15"), "{}", stderr(&o));
    let q = dir.path().join("badpoly.json");
    std::fs::write(&q, r#"{"dimension": 1, "a_terms": [{"vf": ["x1 +"], "fn": "x1"}], "b_terms": []}"#).unwrap();
    assert_eq!(code(&run(&["check-cybe", path_str(&q)])), 2);
}

#[test]
fn build_and_recover_round_trip() {
    let dir = TempDir::new().unwrap();
    let c1 = dir.path().join("c1.json");
    let r1 = dir.path().join("r1.json");
    let c2 = dir.path().join("c2.json");
    let ex = data("example_r.json");
    let steps: [(&str, &Path, &Path); 3] = [("build-cbcst", &ex, &c1), ("to-rmatrix", &c1, &r1), ("build-cbcst", &r1, &c2)];
    for (cmd, input, output) in steps {
        let o = run(&[cmd, path_str(input), "--output", path_str(output)]);
        assert_eq!(code(&o), 0, "{}: {}", cmd, stdout(&o));
    }
    assert_eq!(std::fs::read_to_string(&c1).unwrap(), std::fs::read_to_string(&c2).unwrap());
    let o = run(&["check-cybe", path_str(&r1)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn artifact_goes_to_stdout_without_output() {
    let o = run(&["build-cbcst", path_str(&data("example_r.json")), "--epsilon", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("rho_a").is_some());
    assert!(stderr(&o).contains("PASS"));
}

#[test]
fn build_fails_on_the_zero_and_perturbed_r() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    let o = run(&["build-cbcst", path_str(&perturbed(&dir)), "--epsilon", "1", "--output", path_str(&out)]);
    assert_eq!(code(&o), 1);
    let report = std::fs::read_to_string(&out).unwrap();
    assert!(report.contains("FAIL") && !report.contains("rho_a"));
    assert_eq!(code(&run(&["build-cbcst", path_str(&data("zero_r.json"))])), 1);
}

#[test]
fn quantize_matches_closed_forms() {
    for (eps, file) in [("1", "example_closed_form_eps1.json"), ("0", "example_closed_form_eps0.json")] {
        let o = run(&[
            "quantize",
            path_str(&data("example_r.json")),
            "--order",
            "3",
            "--epsilon",
            eps,
            "--closed-form",
            path_str(&data(file)),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stderr(&o).contains("R matches closed form"));
    }
    let o = run(&[
        "quantize",
        path_str(&data("example_r.json")),
        "--order",
        "3",
        "--epsilon",
        "1",
        "--closed-form",
        path_str(&data("example_closed_form_eps0.json")),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("first difference at order h^"));
}

#[test]
fn quantize_verify_passes_on_the_example() {
    let o = run(&["quantize", path_str(&data("example_r.json")), "--order", "2", "--epsilon", "1", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for name in ["braid equation", "first-order term is r", "quantum unitarity agrees with classical unitarity"] {
        assert!(stderr(&o).contains(name), "{}", name);
    }
}

#[test]
fn quantize_rejects_low_order() {
    for order in ["0", "1"] {
        let o = run(&["quantize", path_str(&data("example_r.json")), "--order", order]);
        assert_eq!(code(&o), 2);
        assert!(stderr(&o).contains("--order"));
    }
}

#[test]
fn check_braid_catches_a_perturbed_series() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("r.json");
    let o = run(&["quantize", path_str(&data("example_r.json")), "--order", "3", "--epsilon", "1", "--output", path_str(&good)]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["check-braid", path_str(&good)])), 0);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let terms = v["images"][0].as_array_mut().unwrap();
    let slot = terms.iter_mut().find(|t| t[0] == 2).expect("h^2 coefficient");
    slot[1] = serde_json::Value::String(format!("{} + x1^2", slot[1].as_str().unwrap()));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let o = run(&["check-braid", path_str(&bad), "--format", "structured"]);
    assert_eq!(code(&o), 1);
    let rep: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep["items"][0]["passed"], false);
    assert!(rep["items"][0]["witness"][0]["location"].as_str().unwrap().starts_with("order h^"));
}

#[test]
fn verify_example5_controls() {
    let o = run(&["verify-example5", "--order", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["verify-example5", "--order", "2", "--epsilon", "1", "--corrupt"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["verify-example5", "--order", "2", "--epsilon", "1", "--format", "structured"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert!(v["items"].as_array().unwrap().len() > 10);
}

#[test]
fn report_goes_to_output_when_there_is_no_artifact() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["check-cybe", path_str(&data("example_r.json")), "--format", "structured", "--output", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
}
