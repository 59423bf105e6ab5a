use std::process::{Command, Output};

use serde_json::Value as Json;

fn qring(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qring"))
        .args(args)
        .env("QRING_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Json) {
    let out = qring(args, "2");
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), doc)
}

fn write_tmp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn json_is_identical_across_worker_counts() {
    for args in [
        &["enumerate", "--ring", "zmod:8", "--json"][..],
        &["classify", "--builtin", "z_padic_3", "--json"],
        &["check", "--builtin", "poly_x_adic", "--json"],
        &["quotfield", "--builtin", "z_padic_2", "--window", "6", "--json"],
        &["counterexample", "--json"],
    ] {
        let one = qring(args, "1");
        let four = qring(args, "4");
        assert!(!one.stdout.is_empty(), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.status.code(), four.status.code());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qring(&["check", "--builtin", "z_standard"], "1").status.code(), Some(0));
    assert_eq!(qring(&["check", "--builtin", "sec3"], "1").status.code(), Some(1));
    assert_eq!(qring(&["counterexample"], "1").status.code(), Some(1));
    assert_eq!(qring(&["classify", "--builtin", "sec3"], "1").status.code(), Some(1));
    assert_eq!(qring(&["classify", "--builtin", "nope"], "1").status.code(), Some(2));
    assert_eq!(qring(&["frobnicate"], "1").status.code(), Some(2));
    assert_eq!(qring(&["--help"], "1").status.code(), Some(0));
    assert_eq!(qring(&["check", "/nonexistent/file.json"], "1").status.code(), Some(2));
    let bad = write_tmp("bad.json", r#"{"ring":{"kind":"integers"}}"#);
    let out = qring(&["check", bad.to_str().unwrap()], "1");
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("relation"), "{text}");
    assert!(!text.contains("time:"), "{text}");
}

#[test]
fn classify_reports_valued_padic() {
    let (code, doc) = json(&["classify", "--builtin", "z_padic_2", "--json"]);
    assert_eq!(code, 0);
    let c = &doc["classification"];
    assert_eq!(c["branch"], "valued");
    assert_eq!(c["support"], serde_json::json!([0]));
    assert_eq!(c["group"]["kind"], "free_rank_one");
    assert_eq!(doc["roundtrip"]["ok"], true);
    // w(12) = v₂(12) = 2.
    let w12 = c["map"].as_array().unwrap().iter().find(|e| e[0] == "12").unwrap();
    assert_eq!(w12[1], 2);
}

#[test]
fn classify_file_with_ordered_relation() {
    let f = write_tmp(
        "std.json",
        r#"{"ring":{"kind":"integers"},"relation":{"kind":"order","order":{"kind":"standard"}},
            "window":{"kind":"interval","lo":-5,"hi":5}}"#,
    );
    let (code, doc) = json(&["classify", f.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["classification"]["branch"], "ordered");
    assert_eq!(doc["classification"]["cone_window"], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn enumerate_z12_finds_two_quasiorders() {
    let (code, doc) = json(&["enumerate", "--ring", "zmod:12", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["count"], 2);
    assert_eq!(doc["cross_check"]["passed"], true);
}

#[test]
fn counterexample_reports_qr5() {
    let (code, doc) = json(&["counterexample", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["counterexample"]["reproduced"], true);
    assert_eq!(doc["counterexample"]["cancellation_witness"]["y"], "X^2");
}

#[test]
fn quotfield_samples_and_preconditions() {
    let out = qring(&["quotfield", "--builtin", "z_padic_2"], "1");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("3/1 ⊴ 1/2"));
    let out = qring(&["quotfield", "--builtin", "z_standard"], "1");
    assert!(String::from_utf8(out.stdout).unwrap().contains("1/2 ⊴ 3/4"));
    let out = qring(&["quotfield", "--builtin", "zmod_trivial_12_3"], "1");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("quotient"));
}

#[test]
fn window_without_minus_one_is_input_error() {
    let f = write_tmp(
        "lopsided.json",
        r#"{"ring":{"kind":"integers"},"relation":{"kind":"order","order":{"kind":"standard"}},
            "window":{"kind":"interval","lo":0,"hi":5}}"#,
    );
    let out = qring(&["check", f.to_str().unwrap()], "1");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("invalid window"));
    assert_eq!(qring(&["enumerate", "--ring", "zmod:x"], "1").status.code(), Some(2));
}
