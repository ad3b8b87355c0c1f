//! End-to-end tests of the command line: exit codes, JSON round trips, and
//! the refusal contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn intrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn intrel_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_intrel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("intrel-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_tables() {
    let out = intrel(&["count", "relations", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4096"));

    let out = intrel(&["count", "indecomposables", "4", "--json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["counts"][3]["count"], "3963");

    let out = intrel(&["count", "family", "TOEP", "5"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("42"));

    // usage errors exit 2
    let out = intrel(&["count", "nonsense", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = intrel(&["verify", "hopf", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = intrel(&["verify", "families", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["failures"], serde_json::json!([]));

    let out = intrel(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quotient_product_round_trip() {
    let a = write_temp(
        "woep-a.json",
        r#"{"family":"WOEP","style":"quotient","terms":[{"rel":{"n":2,"pairs":[[1,2]]},"coeff":1}]}"#,
    );
    let b = write_temp(
        "woep-b.json",
        r#"{"family":"WOEP","style":"quotient","terms":[{"rel":{"n":1,"pairs":[]},"coeff":1}]}"#,
    );
    let out = intrel(&[
        "product",
        "--family",
        "WOEP",
        "--style",
        "quotient",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: intrel::FamilyElement = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(parsed.term_count(), 3);
    // canonical serialization round-trips byte for byte
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
}

#[test]
fn tamari_quotient_is_refused_with_exit_one() {
    let a = write_temp(
        "toep-a.json",
        r#"{"family":"TOEP","style":"quotient","terms":[{"rel":{"n":1,"pairs":[]},"coeff":1}]}"#,
    );
    let out = intrel(&[
        "product",
        "--family",
        "TOEP",
        "--style",
        "quotient",
        a.to_str().unwrap(),
        a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "refusal must exit 1");
    let message = String::from_utf8(out.stderr).unwrap();
    assert!(
        message.contains("3:12,13,32"),
        "message must cite the witness: {message}"
    );
    assert!(message.contains("convolution"));

    let out = intrel(&["coproduct", "--family", "TOIP", "--style", "quotient", "-"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fiber_sum_product_golden() {
    let t1 = write_temp(
        "toep-t1.json",
        r#"{"family":"TOEP","style":"fiber-sum","terms":[{"rel":{"n":2,"pairs":[[1,2]]},"coeff":1}]}"#,
    );
    let t2 = write_temp(
        "toep-t2.json",
        r#"{"family":"TOEP","style":"fiber-sum","terms":[{"rel":{"n":3,"pairs":[[1,2],[3,2]]},"coeff":1}]}"#,
    );
    let out = intrel(&[
        "product",
        "--family",
        "TOEP",
        "--style",
        "fiber-sum",
        t1.to_str().unwrap(),
        t2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: intrel::FamilyElement = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.term_count(), 3);

    let out = intrel(&[
        "coproduct",
        "--family",
        "TOEP",
        "--style",
        "fiber-sum",
        t2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout)
            .unwrap()
            .matches("coeff")
            .count(),
        6,
        "six tensor terms"
    );
}

#[test]
fn project_reads_stdin() {
    let out = intrel_stdin(
        &["project", "--map", "TOIPd", "-"],
        r#"{"n":3,"pairs":[[1,2],[1,3],[3,2]]}"#,
    );
    assert!(out.status.success());
    let image: intrel::IntegerRelation = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(image.pairs(), vec![(1, 2), (3, 2)]);

    // a non-poset input is a usage error
    let out = intrel_stdin(
        &["project", "--map", "WOIPd", "-"],
        r#"{"n":2,"pairs":[[1,2],[2,1]]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_dot_shapes() {
    let out = intrel(&["export-dot", "weak-order", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.matches(";\n").count() - text.matches("->").count(),
        4 + 2,
        "4 nodes plus prologue"
    );
    assert_eq!(text.matches("->").count(), 4, "diamond has 4 cover edges");

    let out = intrel(&["export-dot", "weak-order", "3", "--family", "WOEP"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("->").count(), 6, "hexagon has 6 cover edges");

    let out = intrel(&["export-dot", "tamari", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let nodes = text
        .lines()
        .filter(|l| l.contains('"') && !l.contains("->") && !l.contains("digraph"))
        .count();
    assert_eq!(nodes, 14, "the size-4 lattice has 14 trees");

    let out = intrel(&["export-dot", "weak-order", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
