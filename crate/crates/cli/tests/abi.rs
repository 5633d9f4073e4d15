use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hullsmith");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env("HULLSMITH_CATALOG", dir.join("catalog.jsonl"))
        .env("HULLSMITH_BUG_DIR", dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_writes_a_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build", "--q", "4", "--family", "full-field", "--k", "4", "--out", "ff.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("n=16 k=4"), "{text}");
    assert!(text.contains("hermitian=3"), "{text}");
    let desc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("ff.json")).unwrap()).unwrap();
    assert_eq!(desc["n"], 16);
    assert_eq!(desc["k"], 4);
}

#[test]
fn coset_2h_configuration_builds() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build", "--q", "9", "--h", "2", "--family", "coset-2h", "--k", "12", "--out", "c.json"]);
    // the descriptor is written even when the hull falls short of the bound
    let desc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!((desc["n"].as_u64(), desc["k"].as_u64()), (Some(60), Some(12)));
    assert!(matches!(code(&o), 0 | 3));
}

#[test]
fn bad_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build", "--q", "4", "--family", "coset-h", "--h", "4", "--k", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("h"));
    assert_eq!(code(&run(dir.path(), &["tables", "--q", "6", "--family", "1"])), 2);
    assert_eq!(code(&run(dir.path(), &["frobnicate"])), 2);
}

#[test]
fn rules_chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["build", "--q", "4", "--family", "full-field", "--k", "3", "--out", "k3.json"])), 0);
    let o = run(d, &["rule", "reduce", "--code", "k3.json", "--target-hull", "0", "--out", "r.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("computed 0"));
    let o = run(d, &["rule", "extend-length", "--code", "k3.json", "--lambda", "1", "--out", "e.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[n,k]=[17,3]"));
    let o = run(d, &["rule", "increase-dim", "--code", "k3.json", "--out", "i.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("case"));
    let outcome: Value = serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(outcome["hull_dim"], 0);
    // a rule outcome file is accepted as the next input
    assert_eq!(code(&run(d, &["rule", "increase-dim", "--code", "r.json", "--direction", "up", "--out", "z.json"])), 0);
    // every field element is already a point
    assert_eq!(code(&run(d, &["rule", "extend-zero", "--code", "r.json", "--lambda", "1"])), 2);
    // lambda outside GF(q)
    assert_eq!(code(&run(d, &["rule", "extend-length", "--code", "k3.json", "--lambda", "2"])), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "lemma-q22", "--q", "5"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(code(&run(dir.path(), &["verify", "theorem-grs1", "--q", "4"])), 0);
    let o = run(dir.path(), &["verify", "lemma-2h1", "--q", "5", "--h", "2"]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn tables_csv_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(dir.path(), &["tables", "--q", "5", "--family", "1"]);
    let b = run(dir.path(), &["--no-catalog", "tables", "--q", "5", "--family", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,family,h,n,k_logical,d,c,mds,shape_id,witnessed"));
    for line in lines {
        assert_eq!(line.split(',').count(), 10, "{line}");
    }
    let json = run(dir.path(), &["--no-catalog", "tables", "--q", "5", "--family", "1", "--format", "json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), text.lines().count() - 1);
}

#[test]
fn catalog_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog.jsonl");
    run(dir.path(), &["tables", "--q", "4", "--family", "1"]);
    let first = std::fs::read_to_string(&cat).unwrap();
    assert!(!first.is_empty());
    run(dir.path(), &["tables", "--q", "4", "--family", "1"]);
    assert_eq!(std::fs::read_to_string(&cat).unwrap(), first);
    let hashes: std::collections::HashSet<String> = first.lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["hash"].as_str().unwrap().to_string()).collect();
    assert_eq!(hashes.len(), first.lines().count());
}

#[test]
fn descriptors_survive_a_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["build", "--q", "5", "--family", "coset-h", "--h", "3", "--k", "5", "--out", "a.json"]);
    run(d, &["rule", "reduce", "--code", "a.json", "--target-hull", "0", "--out", "b.json"]);
    let a = std::fs::read_to_string(d.join("a.json")).unwrap();
    let code = hullsmith::descriptor::load_code(&a).unwrap();
    assert_eq!(hullsmith::descriptor::CodeDescriptor::of(&code).to_json(), a.trim_end());
    let b = std::fs::read_to_string(d.join("b.json")).unwrap();
    let o = hullsmith::descriptor::OutcomeDescriptor::from_json(&b).unwrap();
    assert_eq!(o.to_json(), b.trim_end());
}

#[test]
fn guarantee_violation_leaves_a_bug_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build", "--q", "9", "--h", "2", "--family", "coset-2h", "--k", "12", "--out", "c.json"]);
    if code(&o) == 3 {
        let bug = std::fs::read_dir(dir.path()).unwrap().filter_map(|e| e.ok()).find(|e| e.file_name().to_string_lossy().starts_with("hullsmith-bug-"));
        let bug = bug.expect("bug bundle written");
        let v: Value = serde_json::from_str(&std::fs::read_to_string(bug.path()).unwrap()).unwrap();
        assert!(v.get("error").is_some());
    }
}
