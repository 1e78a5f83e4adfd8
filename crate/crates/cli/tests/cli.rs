use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn ck(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ck"));
    cmd.args(args).env_remove("CK_WORKERS");
    if let Some(w) = workers {
        cmd.env("CK_WORKERS", w);
    }
    cmd.output().expect("ck runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a single JSON document")
}

fn temp_config(body: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), body).unwrap();
    f
}

#[test]
fn algebra_new_prints_the_multiplication_table() {
    let out = ck(
        &[
            "algebra",
            "new",
            config("a1_hamilton.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["case"], "A1");
    assert_eq!(v["table"][1][1], "-1");
    assert_eq!(v["table"][1][2], "k");
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn split_algebra_exits_3_with_a_witness() {
    let out = ck(
        &["algebra", "new", config("a1_split.json").to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert!(v["witness"].is_string());
}

#[test]
fn plane_reports_both_planes() {
    for which in ["C", "Cperp"] {
        let out = ck(
            &[
                "plane",
                config("b_ab.json").to_str().unwrap(),
                "--which",
                which,
            ],
            None,
        );
        assert_eq!(out.status.code(), Some(0), "{which}");
        let v = json(&out);
        assert_eq!(v["matches_closed_form"], true);
        assert_eq!(v["C"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn config_errors_exit_2() {
    let broken = temp_config("{");
    let unknown = temp_config(r#"{"case":"A3","field":"Q","a":"1","b":"1"}"#);
    let cases: Vec<Vec<String>> = vec![
        vec![
            "algebra".into(),
            "new".into(),
            broken.path().display().to_string(),
        ],
        vec![
            "algebra".into(),
            "new".into(),
            unknown.path().display().to_string(),
        ],
        vec!["verify".into(), "/definitely/missing.json".into()],
        vec![
            "plane".into(),
            config("a1_hamilton.json").display().to_string(),
            "--which".into(),
            "D".into(),
        ],
        vec![
            "verify".into(),
            config("a1_hamilton.json").display().to_string(),
            "--suite".into(),
            "bogus".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = ck(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(json(&out)["error"].is_string());
    }
}

#[test]
fn bad_worker_count_is_a_config_error() {
    for w in ["0", "many"] {
        let out = ck(
            &[
                "verify",
                config("a1_hamilton.json").to_str().unwrap(),
                "--trials",
                "1",
            ],
            Some(w),
        );
        assert_eq!(out.status.code(), Some(2), "CK_WORKERS={w}");
    }
}

#[test]
fn unvalidated_split_algebra_fails_verification() {
    let f = temp_config(r#"{"case":"A1","field":"Q","a":"1","b":"1","validation":"assert"}"#);
    let out = ck(
        &["verify", f.path().to_str().unwrap(), "--trials", "3"],
        None,
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(json(&out)["error"].as_str().unwrap().contains("quadric"));
}

#[test]
fn verify_reports_every_suite() {
    let out = ck(
        &[
            "verify",
            config("a1_m1_m3.json").to_str().unwrap(),
            "--trials",
            "4",
            "--seed",
            "9",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "all");
    assert_eq!(v["bound"], 10);
    assert_eq!(v["passed"], v["trials"]);
    assert!(v["failed_witnesses"].as_array().unwrap().is_empty());
    assert!(v["suites"].as_array().unwrap().len() >= 12);
}

#[test]
fn function_fields_default_to_bound_2() {
    let out = ck(
        &[
            "verify",
            config("a2_st.json").to_str().unwrap(),
            "--suite",
            "axioms",
            "--trials",
            "2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bound"], 2);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let path = config("a1_hamilton.json");
    let args = [
        "verify",
        path.to_str().unwrap(),
        "--seed",
        "5",
        "--trials",
        "6",
        "--no-timing",
    ];
    let one = ck(&args, Some("1"));
    let three = ck(&args, Some("3"));
    let default = ck(&args, None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn mutate_breaks_suites_but_not_the_control() {
    let out = ck(
        &[
            "mutate",
            config("a1_hamilton.json").to_str().unwrap(),
            "--seed",
            "2",
            "--trials",
            "8",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["control_passed"], true);
    assert!(!v["broken_suites"].as_array().unwrap().is_empty());
}
