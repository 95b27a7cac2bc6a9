use std::process::{Command, Output};

use homcount_cli::bfile::BFile;
use homcount_cli::output::SequenceDoc;

fn homcount(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcount"))
        .args(args)
        .env("HOMCOUNT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn lambda_bfile_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = homcount(dir.path(), &["lambda", "--r", "3", "--max", "8"]);
    assert!(out.status.success());
    let b: BFile = stdout(&out).parse().unwrap();
    let values: Vec<String> = b.entries().iter().map(|(_, v)| v.to_string()).collect();
    assert_eq!(values, ["1", "7", "13", "35", "31", "91", "57", "155"]);
    assert_eq!(b.first_index(), Some(1));
}

#[test]
fn cached_and_uncached_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["count", "--r", "4", "--max", "30", "--format", "json"];
    let cold = homcount(dir.path(), &args);
    assert!(dir.path().join("lambda-r3.json").exists());
    let warm = homcount(dir.path(), &args);
    let mut bypass = args.to_vec();
    bypass.push("--no-cache");
    let none = homcount(dir.path(), &bypass);
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(stdout(&cold), stdout(&none));
    let doc: SequenceDoc = serde_json::from_str(&stdout(&cold)).unwrap();
    assert_eq!(doc.values.len(), 31);
    assert_eq!(doc.values[5], (206u64 * 120).to_string());
}

#[test]
fn corrupt_cache_is_recomputed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("lambda-r2.json"), "{").unwrap();
    let out = homcount(dir.path(), &["lambda", "--r", "2", "--max", "6", "--format", "plain", "--no-header"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n3\n4\n7\n6\n12\n");
    assert!(!out.stderr.is_empty());
}

#[test]
fn normalized_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = homcount(dir.path(), &["count", "--r", "4", "--max", "5", "--egf-normalized", "--format", "plain"]);
    assert_eq!(stdout(&out), "1\n1\n8\n21\n84\n206\n");
}

#[test]
fn orbit_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = homcount(dir.path(), &["count", "--r", "2", "--max", "3", "--orbits", "--format", "bfile", "--no-header"]);
    assert_eq!(stdout(&out), "0 0 1\n1 1 1\n2 1 3\n2 2 1\n3 1 8\n3 2 9\n3 3 1\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(homcount(dir.path(), &["count", "--r", "0", "--max", "3"]).status.code(), Some(2));
    assert_eq!(homcount(dir.path(), &["lambda", "--max", "3"]).status.code(), Some(2));
    assert_eq!(homcount(dir.path(), &["oracle", "--r", "2", "--n", "9"]).status.code(), Some(2));
    assert_eq!(homcount(dir.path(), &["oeis-check", "A079860"]).status.code(), Some(2));
    assert_eq!(homcount(dir.path(), &["verify", "--r", "2", "--max", "4"]).status.code(), Some(0));
    assert_eq!(homcount(dir.path(), &["oeis-check", "A000203", "--max", "100"]).status.code(), Some(0));
}

#[test]
fn oeis_check_against_local_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "1 1\n2 7\n3 13\n4 35\n").unwrap();
    let out = homcount(dir.path(), &["oeis-check", "A001001", "--bfile", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 1\n2 7\n3 14\n").unwrap();
    let out = homcount(dir.path(), &["oeis-check", "A001001", "--bfile", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH at n = 3 (b-file 14, computed 13)"));

    // T_3(n) totals rather than the normalized sequence
    let totals = dir.path().join("totals.txt");
    std::fs::write(&totals, "0 1\n1 1\n2 8\n3 48\n4 504\n5 4680\n").unwrap();
    let out = homcount(dir.path(), &["oeis-check", "A079860", "--bfile", totals.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("match"));
}

#[test]
fn hnf_and_oracle_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = homcount(dir.path(), &["hnf", "--r", "3", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bases"].as_array().unwrap().len(), 7);

    let out = homcount(dir.path(), &["oracle", "--r", "3", "--n", "4", "--parallel", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], "504");
}
