use std::process::{Command, Output};

use minorlift::complexes::LiftContext;
use minorlift::{Poly, Shape};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorlift")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn detail<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["details"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["name"] == name)
        .unwrap_or_else(|| panic!("no detail {name}"))
}

#[test]
fn envelope_schema() {
    let out = run(&["--check", "schur", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["tool"], "minorlift");
    assert!(v["version"].is_string());
    assert_eq!(v["check"], "schur");
    assert_eq!(v["params"]["m"], 4);
    assert_eq!(v["params"]["n"], 3);
    assert_eq!(v["params"]["seed"], 0);
    assert_eq!(v["params"]["trials"], 50);
    assert_eq!(v["status"], "pass");
    assert!(v["elapsed_ms"].is_u64());
    for d in v["details"].as_array().unwrap() {
        assert!(d["name"].is_string() && d["status"].is_string());
    }
}

#[test]
fn lift_reports_the_worked_example() {
    let out = run(&["--check", "lift", "--n", "3", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let values = detail(&v, "phi values")["payload"].as_array().unwrap();
    let top = values.iter().find(|e| e["basis"] == serde_json::json!([1, 2, 3])).unwrap();
    let image = top["image"].as_array().unwrap();
    assert_eq!(image.len(), 1);
    assert_eq!(image[0]["basis"], serde_json::json!([1, 2]));

    let ctx = LiftContext::new(3).unwrap();
    let s: Shape = ctx.shape();
    let coeff = Poly::parse(s, image[0]["coeff"].as_str().unwrap()).unwrap();
    let d: Vec<Poly> = (1..=3).map(|i| ctx.minors().signed_minor(i).unwrap()).collect();
    assert_eq!(coeff, -(&(&d[0] * &d[1]) * &d[2]));

    let single = values.iter().find(|e| e["basis"] == serde_json::json!([2])).unwrap();
    let c = Poly::parse(s, single["image"][0]["coeff"].as_str().unwrap()).unwrap();
    assert_eq!(c, Poly::t(s, 2).pow(2));
}

#[test]
fn hilbert_table_for_the_maximal_ideal() {
    let out = run(&["--check", "hilbert", "--m", "3", "--n", "2", "--t", "2", "--rmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let rows = detail(&v, "dimension table")["payload"].as_array().unwrap();
    let lhs: Vec<u64> = rows.iter().map(|r| r["lhs"].as_u64().unwrap()).collect();
    assert_eq!(lhs, [1, 0, 0, 0, 0]);
}

#[test]
fn pairing_is_deterministic() {
    let strip = |out: &Output| {
        let mut v = json_of(out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&v).unwrap()
    };
    let args = ["--check", "pairing", "--seed", "42", "--trials", "100"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
    let other = run(&["--check", "pairing", "--seed", "43", "--trials", "100"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--check", "nope"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--check", "lift", "--json", "--text"]).status.code(), Some(2));
    let skipped = run(&["--check", "lift", "--n", "9"]);
    assert_eq!(skipped.status.code(), Some(3));
    assert_eq!(json_of(&skipped)["status"], "skipped");
    let infeasible = run(&["--check", "hilbert", "--m", "2", "--n", "2"]);
    assert_eq!(infeasible.status.code(), Some(3));
}

#[test]
fn out_file_and_text() {
    let path = std::env::temp_dir().join(format!("minorlift-cli-{}.txt", std::process::id()));
    let out = run(&["--check", "identities", "--text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("minorlift "));
    assert!(text.contains("check=identities status=pass"));
    assert!(text.contains("key identity"));
}

#[test]
fn all_passes_at_defaults() {
    let out = run(&["--check", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["check"], "all");
    let names: Vec<&str> =
        v["details"].as_array().unwrap().iter().map(|d| d["name"].as_str().unwrap()).collect();
    for prefix in ["lift:", "cayley:", "annihilator:", "hilbert:", "pairing:", "schur:", "identities:"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix}");
    }
    assert!(v["details"].as_array().unwrap().iter().all(|d| d["status"] == "pass"));
}
