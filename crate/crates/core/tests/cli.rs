use std::process::{Command, Output};

use serde_json::Value;
use shortres::koszul::{KoszulStatus, KoszulVerdict};
use shortres::resolution::ResolutionReport;
use shortres::suite::SuiteReport;

fn spec(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortres")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn algebra_reports() {
    let v = json(&["algebra", &spec("cx2.json")]);
    assert_eq!((v["e"].as_u64(), v["r"].as_u64(), v["s"].as_u64()), (Some(2), Some(1), Some(1)));
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["conca"], serde_json::json!([0, 1]));
    assert!(v["validation"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let v = json(&["algebra", &spec("ex111_e5.json"), "--invariants"]);
    assert_eq!(v["hilbert"], "1 + 5t + 4t^2");

    let v = json(&["algebra", &spec("e1_cubic.json"), "--invariants", "--conca"]);
    assert_eq!((v["e"].as_u64(), v["r"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["conca_status"], "none");
    assert!(v["conca"].is_null());
}

#[test]
fn algebra_normalize_prints_relations() {
    let v = json(&["algebra", "cx2", "--normalize"]);
    assert_eq!(v["relations"], serde_json::json!(["X2*X1 + X1*X2"]));
}

#[test]
fn resolve_tables() {
    let v = json(&["resolve", &spec("cx2.json"), "--depth", "8"]);
    let rep: ResolutionReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(rep.betti, (1..=9).collect::<Vec<usize>>());
    assert_eq!(v["numerator"], "1");

    let v = json(&["resolve", "cx2", "--module", "regular", "--depth", "5"]);
    let rep: ResolutionReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(rep.betti, vec![1, 0, 0, 0, 0, 0]);
}

#[test]
fn seeded_modules_are_reproducible() {
    let args = ["resolve", &spec("gorenstein3.json"), "--module", "random:2:0.5", "--seed", "7", "--depth", "6"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["resolve", &spec("gorenstein3.json"), "--module", "random:2:0.5", "--seed", "8", "--depth", "6"]);
    assert!(c.status.success());
}

#[test]
fn budget_truncation_is_not_an_error() {
    let v = json(&["resolve", "square-zero:3", "--depth", "8", "--budget", "100"]);
    assert_eq!(v["report"]["truncated"], true);
}

#[test]
fn koszul_verdicts() {
    let v = json(&["koszul", "cx2", "--module", "negsyz:1"]);
    let verdict: KoszulVerdict = serde_json::from_value(v["verdict"].clone()).unwrap();
    assert_eq!(verdict.status, KoszulStatus::NonKoszul);
    assert_eq!(v["syzygy_index"], 1);

    let v = json(&["koszul", &spec("cx2.json"), "--module", "annihilated:2"]);
    assert_eq!(v["verdict"]["status"], "koszul");

    let v = json(&["koszul", "square-zero:2", "--depth", "6"]);
    assert_eq!(v["label"], "koszul-up-to-6");
    assert_eq!(v["p_M"], "1");
}

#[test]
fn ext_reports() {
    let v = json(&["ext", &spec("cx2.json"), "--basis", "--depth", "6"]);
    assert_eq!(v["w"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));

    let v = json(&["ext", "cx2", "--module", "negsyz:1", "--bound-check"]);
    assert_eq!((v["bound_lhs"].as_u64(), v["bound_rhs"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn exit_codes() {
    let out = run(&["ext", &spec("e1_cubic.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("presentation theorem inapplicable"));

    let out = run(&["ext", "cx2", "--module", "regular", "--delta"]);
    assert_eq!(out.status.code(), Some(3));

    let bad = std::env::temp_dir().join("shortres_bad_spec.json");
    std::fs::write(&bad, "{\"p\": 101, \"e\": 2").unwrap();
    let out = run(&["algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = run(&["resolve", "cx2", "--module", "negsyz:x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["koszul", &spec("fiber_cx2_cubic.json"), "--module", "negsyz:1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn suite_transcripts_repeat() {
    let args = ["suite", "--quick", "--only", "A8,A11,A12", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.lines().any(|l| l.starts_with("A12  INFO")));

    let out = run(&["suite", "--only", "A12", "--json"]);
    let rep: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.results.len(), 1);
    assert!(rep.passed());

    let out = run(&["suite", "--only", "A13"]);
    assert_eq!(out.status.code(), Some(2));
}
