//! End-to-end runs of the command-line binary: exit codes, formats, and the
//! documented examples.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subperm"))
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const X3_GF2: &str = "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 1\n";
const ID3_GF2: &str = "field GF(2)\nn 3\n1 0 0\n0 1 0\n0 0 1\n";
const ANTI3_GF2: &str = "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 0\n";

#[test]
fn canon_b_equiv_prints_the_antidiagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "x.mat", X3_GF2);
    let out = bin()
        .args(["canon", "--action", "b-equiv", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), ANTI3_GF2);
}

#[test]
fn canon_witness_satisfies_its_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "x.mat", X3_GF2);
    let out = bin()
        .args(["canon", "--action", "u-congr", "--witness", "--json", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["action"], "u-congr");
    assert_eq!(v["canonical"]["rows"][2][0], "1");
    assert_eq!(v["canonical"]["rows"][2][2], "0");
    assert!(v["witness"]["u"].is_object());
}

#[test]
fn canon_rejects_non_symmetric_congruence_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "bad.mat", "field GF(3)\nn 2\n0 1\n0 0\n");
    let out = bin()
        .args(["canon", "--action", "u-congr", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("symmetric"));
}

#[test]
fn equiv_exit_codes_follow_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(&dir, "a.mat", ID3_GF2);
    let b = write(&dir, "b.mat", ANTI3_GF2);
    // Full group: rank equality, related.
    let out = bin()
        .args(["equiv", "--parabolic", "3"])
        .args([&a, &b])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // Borel: different canonical forms.
    let out = bin()
        .args(["equiv", "--parabolic", "1,1,1"])
        .args([&a, &b])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "not related");
}

#[test]
fn congr_decides_alternating_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        &dir,
        "a.mat",
        "field GF(3)\nn 4\n0 1 0 0\n2 0 0 0\n0 0 0 1\n0 0 2 0\n",
    );
    let b = write(
        &dir,
        "b.mat",
        "field GF(3)\nn 4\n0 0 1 0\n0 0 0 1\n2 0 0 0\n0 2 0 0\n",
    );
    let out = bin()
        .args(["congr", "--parabolic", "2,2"])
        .args([&a, &b])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["congr", "--parabolic", "4", "--json"])
        .args([&a, &b])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "alternating");
    assert_eq!(v["related"], true);
}

#[test]
fn invariants_emit_the_documented_tables() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "anti.mat", ANTI3_GF2);
    let out = bin()
        .args(["invariants", "--parabolic", "2,1", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["block_rank"], serde_json::json!([[1, 2], [2, 3]]));
    assert_eq!(v["cross_count"], serde_json::json!([[1, 1], [1, 0]]));
}

#[test]
fn census_recurrence_prints_the_count() {
    let out = bin()
        .args(["census", "--recurrence", "alt", "--n", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "10");
    let out = bin()
        .args(["census", "--recurrence", "sym", "--n", "8"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim(), "7193");
}

#[test]
fn census_brute_counts_small_orbits() {
    let out = bin()
        .args([
            "census",
            "--brute",
            "--field",
            "GF(2)",
            "--n",
            "3",
            "--group",
            "b",
            "--relation",
            "congruence",
            "--class",
            "alternating",
            "--reps",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "4");
    assert_eq!(text.matches("field GF(2)").count(), 4);
}

#[test]
fn malformed_input_exits_2_without_panicking() {
    let dir = tempfile::tempdir().unwrap();
    for content in [
        "",
        "field GF(6)\nn 1\n0\n",
        "field GF(2)\nn 2\n0 1\n",
        "field GF(2)\nn 2\n0 9\n0 x\n",
    ] {
        let input = write(&dir, "bad.mat", content);
        let out = bin()
            .args(["canon", "--action", "b-equiv", "--in"])
            .arg(&input)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "content: {content:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
    // Unknown flags are usage errors.
    let out = bin().args(["canon", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_census_suite_passes() {
    let out = bin()
        .args(["verify", "--suite", "census"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));
}
