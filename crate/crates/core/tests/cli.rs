use std::process::{Command, Output};

use serde_json::Value;

fn wflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wflag"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(args: &[&str]) -> Value {
    let o = wflag(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["timing_ms"].is_u64());
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn catalog_lists_nine_rows() {
    let o = wflag(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
    let v = report(&["catalog", "--json"]);
    assert_eq!(v["outputs"].as_array().unwrap().len(), 9);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn usage_errors_exit_one() {
    let o = wflag(&["catalog", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(wflag(&["nonsense"]).status.code(), Some(1));
}

#[test]
fn hilbert_weighted_lgr36() {
    let v = report(&[
        "hilbert",
        "--variety",
        "lgr36",
        "--mu",
        "1,0,0",
        "--u",
        "2",
        "--expand",
        "3",
        "--json",
    ]);
    let out = &v["outputs"];
    assert_eq!(out["canonical_degree"], -8);
    assert_eq!(out["numerator"][0], serde_json::json!([0, "1"]));
    assert_eq!(
        out["numerator"].as_array().unwrap().last().unwrap(),
        &serde_json::json!([20, "-1"])
    );
    assert_eq!(out["expansion"], serde_json::json!(["1", "5", "18", "51"]));
}

#[test]
fn zero_weight_is_rejected_with_the_weight() {
    let o = wflag(&["hilbert", "--variety", "lgr36", "--mu", "0,0,0", "--u", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("lambda_i"), "{err}");
}

#[test]
fn construct_reports_invariants() {
    let v = report(&[
        "construct",
        "--variety",
        "fl13",
        "--mu",
        "0,0,1,1",
        "--u",
        "0",
        "--ops",
        "cone:1,section:2,section:2,section:3",
        "--json",
    ]);
    assert_eq!(v["outputs"]["canonical_degree"], 0);
    assert_eq!(v["outputs"]["invariants"]["degree"], "76/9");
    let o = wflag(&[
        "construct",
        "--variety",
        "lgr36",
        "--ops",
        "section:1,section:1,section:1",
    ]);
    assert!(stdout(&o).contains("Fano genus: 9"));
}

#[test]
fn failing_op_names_its_index() {
    let o = wflag(&[
        "construct",
        "--variety",
        "lgr36",
        "--mu",
        "1,0,0",
        "--u",
        "2",
        "--ops",
        "section:3,section:5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("operation 2"));
}

#[test]
fn search_is_deterministic_across_jobs() {
    let base = [
        "search",
        "--variety",
        "fl13",
        "--target",
        "cy3",
        "--mu-bound",
        "1",
        "--u-bound",
        "3",
        "--json",
    ];
    let one = report(&[&base[..], &["--jobs", "1"]].concat());
    let four = report(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    let rows = one["outputs"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["mu"] == serde_json::json!([1, 1, 1, 0])
            && r["u"] == -1
            && r["ops"] == serde_json::json!(["cone:1", "section:3", "section:2", "section:2"])));
    let table = stdout(&wflag(&base[..base.len() - 1]));
    assert!(table.contains("candidates"));
}

#[test]
fn fano_search_at_the_origin() {
    let v = report(&[
        "search",
        "--variety",
        "lgr36",
        "--target",
        "fano3",
        "--mu-bound",
        "0",
        "--u-bound",
        "1",
        "--max-sections",
        "3",
        "--json",
    ]);
    let rows = v["outputs"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["invariants"]["degree"] == "16" && r["invariants"]["genus"] == 9));
}

#[test]
fn groebner_matches_hilbert() {
    let g = report(&[
        "groebner",
        "--ideal",
        "lgr36",
        "--weights",
        "3,3,3,3,2,3,2,2,1,2,1,1,1,1",
        "--json",
    ]);
    let h = report(&[
        "hilbert",
        "--variety",
        "lgr36",
        "--mu",
        "1,0,0",
        "--u",
        "2",
        "--json",
    ]);
    assert_eq!(g["outputs"]["numerator"], h["outputs"]["numerator"]);
    let bad = wflag(&[
        "groebner",
        "--ideal",
        "lgr36",
        "--weights",
        "2,1,1,1,1,1,1,1,1,1,1,1,1,1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("A1"));
}

#[test]
fn groebner_reads_equation_files() {
    let dir = std::env::temp_dir().join(format!("wflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cubic.txt");
    std::fs::write(&path, "F1: 1 x1*x2; -1 x3^2\nF2: 1 x1*x3; -1 x2^2\n").unwrap();
    let v = report(&[
        "groebner",
        "--ideal",
        path.to_str().unwrap(),
        "--order",
        "lex",
        "--json",
    ]);
    let basis: Vec<String> = serde_json::from_value(v["outputs"]["basis"].clone()).unwrap();
    assert!(basis.iter().any(|b| b == "x2^3 - x3^3"), "{basis:?}");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_suites_pass() {
    for suite in ["paper", "appendix", "compact"] {
        let o = wflag(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let v = report(&["verify", "--suite", "paper", "--json"]);
    assert_eq!(v["outputs"]["hard_failures"], 0);
    let checks = v["outputs"]["checks"].as_array().unwrap();
    assert_eq!(checks.iter().filter(|c| c["hard"] == true).count(), 5);
    assert_eq!(
        wflag(&["verify", "--suite", "bogus"]).status.code(),
        Some(1)
    );
}
