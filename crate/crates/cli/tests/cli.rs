//! End-to-end checks of the binary: flags, exit codes, JSON shapes, and
//! output determinism.

use std::process::{Command, Output};

fn hypersplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn zero_locus_cardinalities() {
    let out = hypersplit(&["zloc", "--moduli", "2,3,4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("18 of 24"));

    let out = hypersplit(&["zloc", "--moduli", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cardinality"], 1);

    let out = hypersplit(&["zloc", "--moduli", "2,2"]);
    assert!(stdout(&out).contains("3 of 4"));
}

#[test]
fn members_of_inflated_hyperplane() {
    let out = hypersplit(&[
        "members", "--moduli", "4,2", "--char", "1,1", "--target", "1/2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(2,0)"));
    assert!(text.contains("(0,1)"));
    assert!(text.contains("quotient order 4"));
}

#[test]
fn rho_table_json() {
    let out = hypersplit(&["rho", "--n", "3", "--q", "1", "--table", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rho"]["0"], "0");
    assert_eq!(v["rho"]["1"], "1/3");
    assert_eq!(v["rho"]["2"], "1/3");
}

#[test]
fn exit_codes() {
    // Usage: unparsable moduli.
    let out = hypersplit(&["zloc", "--moduli", "two"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage: unknown flag (clap).
    let out = hypersplit(&["zloc", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage: unknown theorem.
    let out = hypersplit(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // Hypothesis failure: not a lens space.
    let out = hypersplit(&["rho", "--n", "4", "--q", "2"]);
    assert_eq!(out.status.code(), Some(4));
    // Hypothesis failure: map does not preserve the zero locus.
    let out = hypersplit(&["analyze-iso", "--moduli", "3,3", "--matrix", "1,0;1,1"]);
    assert_eq!(out.status.code(), Some(4));
    // Budget exceeded under a tiny cap.
    let out = Command::new(env!("CARGO_BIN_EXE_hypersplit"))
        .args(["zloc", "--moduli", "2,3,4"])
        .env("HYPERSPLIT_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // A passing sweep exits 0.
    let out = hypersplit(&[
        "verify", "thm1", "--alphabet", "3,4", "--max-factors", "2", "--max-order", "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn analyze_iso_json_round_trips() {
    let out = hypersplit(&[
        "analyze-iso", "--moduli", "2,2,4", "--matrix", "1,0,0;0,1,0;2,2,1",
    ]);
    assert!(out.status.success());
    let report: hypersplit::BlockFormReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.ell, 2);
    assert_eq!(report.f21, vec![vec![2, 2]]);
    assert_eq!(report.diag, vec![1]);
    assert_eq!(
        serde_json::to_value(&report).unwrap(),
        serde_json::from_str::<serde_json::Value>(&stdout(&out)).unwrap()
    );
}

#[test]
fn cancel_detects_mismatched_families() {
    let out = hypersplit(&[
        "cancel", "--family-a", "3,5", "--family-b", "3,7", "--matrix", "1,0;0,1",
    ]);
    assert_eq!(out.status.code(), Some(4));

    let out = hypersplit(&[
        "cancel", "--family-a", "3,3", "--family-b", "3,3", "--matrix", "0,1;1,0",
    ]);
    assert!(out.status.success());
    let report: hypersplit::BlockFormReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.permutation, vec![1, 0]);
}

#[test]
fn signatures_zero_locus_cardinality() {
    let out = hypersplit(&[
        "signatures", "zero-locus", "--family", "3,5,7", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cardinality"], 57);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["splittings", "--moduli", "2,2,2", "--format", "json"][..],
        &["zloc", "--moduli", "2,3,4", "--format", "json"][..],
        &["analyze-iso", "--moduli", "2,2,4", "--matrix", "1,0,0;0,1,0;2,2,1"][..],
    ] {
        let a = stdout(&hypersplit(args));
        let b = stdout(&hypersplit(args));
        assert_eq!(a, b, "nondeterministic output for {args:?}");
    }
    // Sweep reports are deterministic up to the wall-time field.
    let args = [
        "verify", "lemma-ord2", "--alphabet", "2,4", "--max-factors", "2", "--max-order", "16",
        "--format", "json",
    ];
    let mut a: serde_json::Value = serde_json::from_str(&stdout(&hypersplit(&args))).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(&stdout(&hypersplit(&args))).unwrap();
    a["wall_ms"] = 0.into();
    b["wall_ms"] = 0.into();
    assert_eq!(a, b);
}

#[test]
fn splittings_report_json() {
    let out = hypersplit(&["splittings", "--moduli", "3,5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 1);
    let report: hypersplit::RecoveryReport =
        serde_json::from_value(v["reports"][0].clone()).unwrap();
    assert_eq!(report.quotient_orders, vec![5, 3]);
}
