use std::process::{Command, Output};

use serde_json::Value;

fn kdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// JSON report with the timing field removed.
fn untimed(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn count_prints_the_formula() {
    let out = kdiv(&["count", "--n", "5", "--k", "3", "--j", "1"]);
    assert_eq!((code(&out), stdout(&out)), (0, "1001\n".into()));
    let out = kdiv(&["count-general", "--a", "3", "--b", "0", "--c", "1", "--d", "2", "--n", "2"]);
    assert_eq!(stdout(&out), "15\n");
}

#[test]
fn seq_and_bfile() {
    let out = kdiv(&["seq", "--k", "2", "--j", "1", "--n-max", "7"]);
    assert_eq!(stdout(&out), "1\n2\n5\n14\n42\n132\n429\n");
    let out = kdiv(&["seq", "--k", "3", "--j", "1", "--n-max", "3", "--bfile"]);
    assert_eq!(stdout(&out), "1 3\n2 10\n3 42\n");
}

#[test]
fn stat_orbit_and_enumerate() {
    let out = kdiv(&["stat", "--path", "UDDUDUUUDDDDDUD", "--n", "5", "--k", "3", "--j", "1", "--mark", "1"]);
    assert_eq!((code(&out), stdout(&out)), (0, "3\n".into()));
    let out = kdiv(&["orbit", "--path", "UUUDUU", "--n", "3", "--k", "2", "--j", "2"]);
    assert_eq!(stdout(&out), "UUUUUD\nUUUDUU\nUDUUUU\n");
    let out = kdiv(&["enumerate", "--n", "3", "--k", "2", "--j", "1"]);
    assert_eq!(stdout(&out).lines().count(), 15);
    let out = kdiv(&["enumerate", "--n", "3", "--k", "2", "--j", "1", "--limit", "2"]);
    assert_eq!(stdout(&out), "UUUUDD\nUUUDUD\n");
}

#[test]
fn verify_uniform_json() {
    let out = kdiv(&["verify", "--suite", "uniform", "--n", "3", "--k", "2", "--j", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = untimed(&stdout(&out));
    assert_eq!(v["suite"], "uniform");
    assert_eq!(v["bins"], serde_json::json!(["5", "5", "5"]));
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["cases"], 15);
}

#[test]
fn failing_suite_exits_one_with_witnesses() {
    let out = kdiv(&["verify", "--suite", "main", "--n", "2", "--k", "3", "--j", "1", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = untimed(&stdout(&out));
    assert_eq!(v["failures"][0]["path"], "UUUDDD");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["count", "--n", "5", "--k", "3"],
        &["count", "--n", "1", "--k", "1", "--j", "1"],
        &["stat", "--path", "UXD", "--n", "1", "--k", "3", "--j", "1", "--mark", "1"],
        &["stat", "--path", "UUD", "--n", "1", "--k", "3", "--j", "1", "--mark", "2"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "uniform", "--n", "12", "--k", "4", "--j", "1"],
        &["verify", "--suite", "bijection", "--j", "2"],
        &["verify", "--suite", "uniform", "--n", "5..=2"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = kdiv(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(code(&kdiv(&["--help"])), 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "labels", "--n", "1..=7", "--k", "2..=3", "--j", "1..=3", "--format", "json"];
    let first = untimed(&stdout(&kdiv(&args)));
    let second = untimed(&stdout(&kdiv(&args)));
    let mut serial_args = args.to_vec();
    serial_args.push("--serial");
    let serial = untimed(&stdout(&kdiv(&serial_args)));
    assert_eq!(first, second);
    assert_eq!(first, serial);
    assert_eq!(first["params"]["families"], 38);
}

#[test]
fn csv_and_text_formats() {
    let base = ["verify", "--suite", "corollary", "--n", "3", "--k", "2"];
    let csv = stdout(&kdiv(&[&base[..], &["--format", "csv"]].concat()));
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("record,suite,params,cases,bins"));
    assert!(lines.next().unwrap().starts_with("report,corollary,j=1;k=2;n=3,15,5,0,PASS,"));
    let text = stdout(&kdiv(&[&base[..], &["--format", "text"]].concat()));
    assert!(text.starts_with("corollary PASS cases=15 failures=0"));
}
