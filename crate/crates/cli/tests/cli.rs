use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperspace")).args(args).output().expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn classify_quadrant() {
    let j = json(&["classify", &fx("quadrant.json")]);
    assert_eq!(j["tag"], "SeparableHilbert");
    assert_eq!(j["clause"], "Theorem 1(5)");
    assert_eq!(j["space"], "l2");
    let j = json(&["classify", &fx("strip.json")]);
    assert_eq!(j["tag"], "HalfPlaneStrip");
}

#[test]
fn hausdorff_shifted_square() {
    let j = json(&["hausdorff", &fx("sq.json"), &fx("sq_shift34.json")]);
    assert_eq!(j["value"], "4");
    assert_eq!(j["attained"], true);
    let f: Vec<&str> = j["separator"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(f, ["0", "-1"]);
    let j = json(&["hausdorff", &fx("sq.json"), &fx("quadrant.json")]);
    assert_eq!(j["value"], "inf");
    assert!(j["explanation"].is_string());
}

#[test]
fn table_output_is_readable() {
    let out = run(&["hausdorff", &fx("sq.json"), &fx("sq_shift34.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("value") && l.ends_with('4')), "{text}");
    assert!(text.contains("separator  (0, -1)"), "{text}");
}

#[test]
fn support_dist_and_operations() {
    assert_eq!(json(&["support", &fx("quadrant.json"), "--dir", "-1,-1"])["value"], "0");
    assert_eq!(json(&["support", &fx("quadrant.json"), "--dir", "1,0"])["value"], "inf");
    let j = json(&["dist", &fx("sq.json"), "--point", "3,1/2"]);
    assert_eq!(j["distance"], "2");
    let j = json(&["sum", &fx("sq.json"), &fx("sq_shift34.json")]);
    assert_eq!(j["vrep"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(j["vrep"]["vertices"][0], serde_json::json!(["3", "4"]));
    let j = json(&["scale", &fx("sq.json"), "--r", "-1/2"]);
    assert_eq!(j["vrep"]["vertices"][0], serde_json::json!(["-1/2", "-1/2"]));
    let j = json(&["combine", &fx("sq.json"), &fx("sq_shift34.json"), "--t", "1/4"]);
    assert_eq!(j["vrep"]["vertices"][0], serde_json::json!(["3/4", "1"]));
    let j = json(&["hull", &fx("quadrant.json"), &fx("sq_shift34.json")]);
    assert_eq!(j["vrep"]["rays"].as_array().unwrap().len(), 2);
    let j = json(&["translate", &fx("sq.json"), "--dir", "3,4"]);
    assert_eq!(j["hrep"]["b"], serde_json::json!(["4", "-3", "5", "-4"]));
    let j = json(&["recession", &fx("strip_up3.json")]);
    assert_eq!(j["vrep"]["lineality"], serde_json::json!([["1", "0"]]));
    let j = json(&["dual-cone", &fx("quadrant.json")]);
    assert_eq!(j["generators"], serde_json::json!([["-1", "0"], ["0", "-1"]]));
    assert_eq!(json(&["lemma31", &fx("strip.json")])["holds"], true);
}

#[test]
fn quotient_by_axis() {
    let j = json(&["quotient", &fx("strip_up3.json"), "--subspace", &fx("x_axis.json")]);
    assert_eq!(j["dim"], 1);
    assert_eq!(j["vrep"]["vertices"], serde_json::json!([["3"], ["4"]]));
    let out = run(&["quotient", &fx("quadrant.json"), "--subspace", &fx("x_axis.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[HypothesisViolated]"), "{}", stderr(&out));
}

#[test]
fn witness_family_bounds() {
    let j = json(&["witness", &fx("quadrant.json"), "--eps", "1/2", "--n", "4"]);
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["delta"], "1/4");
    assert_eq!(j["members"].as_array().unwrap().len(), 5);
    assert_eq!(j["checks"].as_array().unwrap().len(), 5 + 10);
    let out = run(&["witness", &fx("strip.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[HypothesisViolated]"));
}

#[test]
fn prop42_and_biorth() {
    let j = json(&[
        "prop42",
        &fx("sq.json"),
        &fx("sq_shift34.json"),
        &fx("sq.json"),
        &fx("sq_shift34.json"),
        &fx("sq.json"),
        "--r",
        "-2",
        "--t",
        "1/4",
        "--t2",
        "1",
    ]);
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["clauses"][4]["lhs"], "3");
    let j = json(&["biorth", "--n", "3", "--subsets", "1,2;1,2,3"]);
    assert_eq!(j["pairs"][0]["value"], "1");
    assert_eq!(j["all_pass"], true);
    let out = run(&["biorth", "--n", "2", "--subsets", "1;1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_on_fixtures() {
    let out = run(&[
        "verify-all",
        &fx("sq.json"),
        &fx("sq_shift34.json"),
        &fx("quadrant.json"),
        &fx("strip.json"),
        &fx("strip_up3.json"),
        "--samples",
        "20",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn error_paths_exit_2_with_codes() {
    let cases = [
        (vec!["classify".to_string(), fx("empty.json")], "error[EmptySet]"),
        (vec!["classify".to_string(), fx("inconsistent.json")], "error[ParseError]"),
        (vec!["classify".to_string(), fx("bad_entry.json")], "error[ParseError]"),
        (vec!["sum".to_string(), fx("sq.json"), fx("cone3.json")], "error[DimensionMismatch]"),
        (vec!["classify".to_string(), fx("missing.json")], "error[IoError]"),
        (vec!["support".to_string(), fx("sq.json"), "--dir".into(), "1,2,3".into()], "error[DimensionMismatch]"),
        (vec!["combine".to_string(), fx("sq.json"), fx("sq.json"), "--t".into(), "2".into()], "error[InvalidArgument]"),
        (vec!["witness".to_string(), fx("segment3.json")], "error[HypothesisViolated]"),
    ];
    for (args, prefix) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert!(err.starts_with(prefix), "{args:?}: {err}");
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let err = stderr(&run(&["classify", &fx("bad_entry.json")]));
    assert!(err.contains("bad_entry.json") && err.contains("hrep.A[1][1]"), "{err}");
}

#[test]
fn unknown_verb_prints_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Usage"));
}

#[test]
fn output_is_deterministic() {
    let args = ["hausdorff", &fx("quadrant.json"), &fx("sq_shift34.json"), "--json"];
    let first = run(&["convert", &fx("sq_shift34.json"), "--json"]).stdout;
    let second = run(&["convert", &fx("sq_shift34.json"), "--json"]).stdout;
    assert_eq!(first, second);
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let w1 = run(&["witness", &fx("cone3.json"), "--n", "2", "--json"]).stdout;
    let w2 = run(&["witness", &fx("cone3.json"), "--n", "2", "--json"]).stdout;
    assert_eq!(w1, w2);
}

#[test]
fn output_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["convert", &fx("quadrant.json"), "--json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dim"], 2);

    let input = dir.path().join("tri.json");
    std::fs::write(&input, r#"{"dim": 2, "vrep": {"vertices": [[0, 0], [2, 0], [0, 2]]}}"#).unwrap();
    let j = json(&["convert", input.to_str().unwrap()]);
    assert_eq!(j["hrep"]["A"].as_array().unwrap().len(), 3);
}
