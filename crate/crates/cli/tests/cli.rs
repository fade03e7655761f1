use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn lle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = lle(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["schema_version"], 1);
    (o.status.code().unwrap(), v)
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".cfg").tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn table_matches_golden() {
    let o = lle(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(16×16) matrices: H, (1+1), 4_H ≡ 16 real components"));
    assert_eq!(out.lines().filter(|l| l.contains("matrices:")).count(), 11);

    let (code, v) = json(&["table"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    assert_eq!(v["matches"], true);
}

#[test]
fn tampered_golden_fails_with_diff() {
    let golden = lle_core::lle::GOLDEN_TABLE.replace("4_H", "5_H");
    let f = temp_file(&golden);
    let o = lle(&["table", "--golden", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("- (16×16) matrices: H, (1+1), 5_H"));
    assert!(out.contains("+ (16×16) matrices: H, (1+1), 4_H"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(lle(&["verify", "eq9"]).status.code(), Some(0));
    assert_eq!(lle(&["verify", "Cl(4,3)-set2"]).status.code(), Some(0));
    assert_eq!(lle(&["verify", "nosuchkey"]).status.code(), Some(2));
    assert_eq!(lle(&["bogus-subcommand"]).status.code(), Some(2));

    let bad = temp_file(r#"{"name": "bad", "time": "QI", "space": ["XI", "IX"]}"#);
    let (code, v) = json(&["verify", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let sq = &v["reports"][0]["checks"];
    let d2 = sq.as_array().unwrap().iter().find(|c| c["name"].as_str().unwrap().starts_with("D^2")).unwrap();
    assert_eq!(d2["passed"], false);

    let garbage = temp_file("{ not json");
    assert_eq!(lle(&["verify", garbage.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_json_reports_classification() {
    let (code, v) = json(&["verify", "eq16"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["type"], "H");
    assert_eq!(v["classification"]["commutant_dim"], 4);
}

#[test]
fn dispersion_runs() {
    let (code, v) = json(&["dispersion", "eq11"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn susy_conformal_prepotential() {
    let o = lle(&["susy", "--prepotential", "g*x^-1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("V+ = (g^2 - g)*x^-2"));
    assert!(out.contains("V- = (g^2 + g)*x^-2"));
    let (_, v) = json(&["susy", "--prepotential", "f"]);
    assert_eq!(v["algebraic"][0]["equation"], "psi3 = (dx + f) psi2");
    assert_eq!(lle(&["susy", "--prepotential", "((x"]).status.code(), Some(2));
}

#[test]
fn osp12_check() {
    let (code, v) = json(&["osp12", "--check"]);
    assert_eq!(code, 0);
    let rows = v["brackets"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert!(v["jacobi_failures"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_lists_everything() {
    let (code, v) = json(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(v["equations"].as_array().unwrap().len(), 11);
    assert_eq!(v["clifford_sets"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic() {
    for args in [&["table"][..], &["osp12", "--check"], &["verify", "eq13"]] {
        assert_eq!(lle(args).stdout, lle(args).stdout);
    }
}
