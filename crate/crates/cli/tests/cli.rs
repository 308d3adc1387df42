//! End-to-end checks through the compiled binary: output contents and exit
//! codes for each subcommand and format.

use std::process::{Command, Output};

fn maxcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(args)
        .env_remove("MAXCURVE_BUDGET")
        .output()
        .expect("binary runs")
}

fn maxcurve_with_budget(budget: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxcurve"))
        .args(args)
        .env("MAXCURVE_BUDGET", budget)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("json output")
}

#[test]
fn verify_reports_base_and_extension_counts() {
    let out = maxcurve(&["verify-maximal", "hermitian:q=3", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "maxcurve.report.v1");
    assert_eq!(v["base"]["observed"], 28);
    assert_eq!(v["extensions"][0]["observed"]["total"], 28);
    assert_eq!(v["all_match"], true);

    let out = maxcurve(&["verify-maximal", "as:q=7,m=4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("176"));
    assert!(text.contains("1520"));
    assert!(text.contains("verdict: PASS"));

    let out = maxcurve(&["verify-maximal", "fermat-half:q=5", "--k-max", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("36"));
}

#[test]
fn count_works_on_base_field_and_extension() {
    let out = maxcurve(&["count", "--family", "as:q=3,m=2", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["observed"]["total"], 16);
    assert_eq!(v["predicted"], 16);
    assert_eq!(v["matches"], true);

    let out = maxcurve(&[
        "count",
        "--family",
        "as:q=3,m=2",
        "--k",
        "2",
        "--brute",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["observed"]["total"], 64);
    assert_eq!(v["method"], "brute");
}

#[test]
fn bounds_csv_has_the_fixed_columns() {
    let out = maxcurve(&["bounds", "--q", "7", "--r", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,r,c0,eps,c1,eps1,ihara,ft1,third"));
    assert_eq!(lines.next(), Some("7,3,9,1,7,1,21,9,7"));
    assert_eq!(lines.next(), None);
}

#[test]
fn semigroup_reports_genus_and_duality() {
    let out = maxcurve(&["semigroup", "--gens", "4,7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("genus 9"));
    assert!(text.contains("frobenius number 17"));

    let out = maxcurve(&[
        "semigroup",
        "--gens",
        "4,11",
        "--orders-q",
        "11",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["orders"]["orders"], serde_json::json!([0, 1, 4, 8, 12]));
}

#[test]
fn spectrum_audit_emits_settled_spectrum() {
    let out = maxcurve(&["spectrum-audit", "4", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["settled_spectrum"], serde_json::json!([0, 1, 2, 6]));
    assert_eq!(v["rows"][6]["classification"]["verdict"], "unique");

    let out = maxcurve(&["spectrum-audit", "8", "--r", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let g11 = text.lines().find(|l| l.starts_with("11,")).unwrap();
    assert!(g11.contains("excluded"));
    assert!(g11.contains("241"));
}

#[test]
fn mismatch_exits_one() {
    let out = maxcurve(&["count", "--family", "hermitian:q=2", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn resource_and_usage_problems_exit_two() {
    // over budget: brute enumeration of GF(13^4) squared
    let out = maxcurve_with_budget(
        "1000000",
        &["count", "--family", "hermitian:q=13", "--k", "2", "--brute"],
    );
    assert_eq!(out.status.code(), Some(2));

    // the floor keeps tiny budgets workable
    let out = maxcurve_with_budget("10", &["count", "--family", "hermitian:q=2"]);
    assert!(out.status.success());

    let out = maxcurve(&["count", "--family", "hermitian:q=16"]);
    assert_eq!(out.status.code(), Some(2));
    let out = maxcurve(&["count", "--family", "hermitian:q=16", "--q-cap", "16"]);
    assert!(out.status.success());

    let out = maxcurve(&["count", "--family", "bogus:q=3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = maxcurve(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}
