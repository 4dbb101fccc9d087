use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qramp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qramp")).args(args).output().unwrap()
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "specs", name].iter().collect();
    p.display().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn build_to(dir: &Path, spec_name: &str) -> String {
    let path = dir.join("scheme.json").display().to_string();
    let out = qramp(&["build", "--spec", &spec(spec_name), "-o", &path]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn build_writes_a_loadable_scheme() {
    let out = qramp(&["build", "--spec", &spec("grs_q7.json")]);
    assert_eq!(code(&out), 0);
    let scheme = json(&out);
    assert_eq!(scheme["n"], 5);
    assert_eq!(scheme["C1"].as_array().unwrap().len(), 4);
    assert_eq!(scheme["f_reps"].as_array().unwrap().len(), 3);

    let out = qramp(&["build", "--spec", &spec("hermitian_5_2.json")]);
    assert_eq!(code(&out), 0);
    let scheme = json(&out);
    assert_eq!(scheme["n"], 8);
    assert_eq!(scheme["provenance"]["genus"], 1);
    assert_eq!(scheme["provenance"]["theorem2_threshold"], 7);
}

#[test]
fn malformed_specs_exit_1() {
    for bad in [
        r#"{"type": "grs", "q": 7}"#,
        r#"{"type": "grs", "q": 6, "n": 3, "k": 2, "L": 1, "alpha": [1, 2, 3]}"#,
        r#"{"type": "hermitian", "r": 2, "m1": 4, "m2": 1, "points": [0, 0]}"#,
        r#"{"type": "curve"}"#,
        "not json",
    ] {
        let out = qramp(&["build", "--inline", bad]);
        assert_eq!(code(&out), 1, "{bad}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    assert_eq!(code(&qramp(&["build", "--spec", "/nonexistent.json"])), 1);
    assert_eq!(code(&qramp(&["build"])), 1);
    assert_eq!(code(&qramp(&["frobnicate"])), 1);
}

#[test]
fn analyze_all_lists_every_subset() {
    let out = qramp(&["analyze", "--spec", &spec("grs_q7.json"), "--all", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 32);
    assert_eq!(report["smallest_qualified_size"], 4);
    assert_eq!(report["largest_forbidden_size"], 1);

    let out = qramp(&["analyze", "--spec", &spec("grs_q7.json"), "--all", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 33);
}

#[test]
fn analyze_single_subset() {
    let out = qramp(&["analyze", "--spec", &spec("grs_q7.json"), "--subset", "1,2,3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["records"][0];
    assert_eq!(r["reconstructible_qudits"], 1);
    assert_eq!(r["holevo"], 2);
    assert_eq!(r["members"], serde_json::json!([1, 2, 3]));

    let out = qramp(&["analyze", "--spec", &spec("grs_q7.json"), "--subset", "1,6"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn analyze_human_output_has_a_table() {
    let out = qramp(&["analyze", "--spec", &spec("hermitian_5_2.json"), "--all"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("threshold 7 holds"));
    assert!(text.lines().any(|l| l.starts_with("J ")));
}

#[test]
fn verify_passes_on_sample_schemes() {
    for name in ["grs_q7.json", "rational_q7.json", "hermitian_4_1.json", "hermitian_5_2.json"] {
        let out = qramp(&["verify", "--spec", &spec(name), "--all", "--format", "json"]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let report = json(&out);
        assert_eq!(report["passed"], true);
        assert_eq!(report["checks"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let scheme = build_to(dir.path(), "grs_q7.json");
    let args = ["verify", "--scheme", &scheme, "--all", "--seed", "17", "--format", "json"];
    let a = qramp(&args);
    let b = qramp(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let out = qramp(&["verify", "--scheme", &scheme, "--subset", "2,3,4", "--checks", "holevo,decode"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}

#[test]
fn corrupted_scheme_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_to(dir.path(), "grs_q7.json");
    let mut scheme: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // a C2 generator outside C1: every C1 codeword here is a GRS word, so e_1 is not one
    scheme["C2"] = serde_json::json!([[1, 0, 0, 0, 0]]);
    std::fs::write(&path, scheme.to_string()).unwrap();
    let out = qramp(&["analyze", "--scheme", &path, "--all"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains(&path));
}

#[test]
fn simulate_recovers_the_secret() {
    let dir = tempfile::tempdir().unwrap();
    let post = dir.path().join("post.json").display().to_string();
    let out = qramp(&[
        "simulate",
        "--spec",
        &spec("grs_q7.json"),
        "--subset",
        "1,2,4,5",
        "--seed",
        "3",
        "--output",
        &post,
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["qualified"], true);
    assert!((r["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let state: Value = serde_json::from_str(&std::fs::read_to_string(&post).unwrap()).unwrap();
    assert_eq!(state["t"], 5);

    let out = qramp(&["simulate", "--spec", &spec("grs_q7.json"), "--subset", "1,2,3", "--product"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fidelity: 1.00000000000"), "{text}");

    // a forbidden set has nothing to decode
    let out = qramp(&["simulate", "--spec", &spec("grs_q7.json"), "--subset", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn simulate_accepts_a_secret_file() {
    let dir = tempfile::tempdir().unwrap();
    let secret = dir.path().join("secret.json");
    // |000> + |123>, normalized
    let mut amps = vec![[0.0, 0.0]; 343];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = [h, 0.0];
    amps[49 + 2 * 7 + 3] = [0.0, h];
    std::fs::write(&secret, serde_json::json!({"q": 7, "t": 3, "amplitudes": amps}).to_string()).unwrap();
    let out = qramp(&[
        "simulate",
        "--spec",
        &spec("grs_q7.json"),
        "--subset",
        "2,3,4,5",
        "--secret",
        secret.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!((json(&out)["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn size_guard_exits_3() {
    // 21 participants exceeds the exhaustive classification limit
    let alpha: Vec<u32> = (1..=21).collect();
    let inline = serde_json::json!({"type": "grs", "q": 23, "n": 21, "k": 4, "L": 2, "alpha": alpha}).to_string();
    let out = qramp(&["analyze", "--inline", &inline, "--all"]);
    assert_eq!(code(&out), 3);
}
