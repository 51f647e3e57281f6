use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use realbott::digraph::{build_digraph, digraph_spin, export_dot};
use realbott::BottMatrix;

fn bott(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bott")).args(args).env_remove("BOTT_MAX_N").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixtures_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

#[test]
fn check_inline_spin() {
    let o = bott(&["check", "--matrix", "0110;0011;0000;0000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "orientable=true spin=true\n");
}

#[test]
fn check_not_spin_still_exits_zero() {
    let o = bott(&["check", "--matrix", "01;00", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orientable"], false);
    assert_eq!(v["spin"], false);
    assert_eq!(v["witness"]["kind"], "row");
    assert_eq!(v["witness"]["i"], 1);
}

#[test]
fn check_pair_witness_json() {
    let path = fixtures_dir().join("egdigraph-c4.txt");
    let o = bott(&["--format", "json", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spin"], false);
    assert_eq!((v["witness"]["j"].as_u64(), v["witness"]["k"].as_u64()), (Some(2), Some(3)));
    assert_eq!(v["witness"]["P"].as_u64().unwrap() + v["witness"]["Q"].as_u64().unwrap(), 1);
}

#[test]
fn check_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bott"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1 1\n0 0 0\n0 0 0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "orientable=true spin=true\n");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "0 1\n0 2\n").unwrap();
    let o = bott(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2, column 2"), "{}", stderr(&o));

    let o = bott(&["check", "--matrix", "011;00;000"]);
    assert_eq!(o.status.code(), Some(2));

    let o = bott(&["check", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cyclic_matrix_names_the_cycle() {
    let o = bott(&["check", "--matrix", "010;001;100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("directed cycle"), "{}", stderr(&o));
}

#[test]
fn general_matrix_is_normalized() {
    // reversal of 0110;0011;0000;0000
    let o = bott(&["check", "--matrix", "0000;0000;1100;0110"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("orientable=true spin=true\n"), "{out}");
    assert!(out.contains("sigma="), "{out}");
}

#[test]
fn oversized_matrix_rejected() {
    let row = "0".repeat(21);
    let m = vec![row.as_str(); 21].join(";");
    let o = bott(&["check", "--matrix", &m]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds"));
}

#[test]
fn sw_classes_and_numbers() {
    let o = bott(&["sw", "--matrix", "01;00", "--classes", "--numbers"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("w0 = 1\nw1 = y1\nw2 = 0\n"), "{out}");
    assert!(out.contains("orientable=false spin=n/a"));
    assert!(out.contains("<w2, mu> = 0"));
    assert!(out.contains("<w1^2, mu> = 0"));
    assert!(out.ends_with("all_sw_numbers_zero=true\n"));

    let o = bott(&["sw", "--matrix", "01;00", "--numbers"]);
    assert!(!stdout(&o).contains("w0 = 1"));
}

#[test]
fn sw_json() {
    let o = bott(&["sw", "--matrix", "0110;0011;0000;0000", "--numbers", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orientable"], true);
    assert_eq!(v["spin"], true);
    assert_eq!(v["sw_numbers_all_zero"], true);
    assert_eq!(v["w"].as_array().unwrap().len(), 5);
    assert_eq!(v["sw_numbers"].as_array().unwrap().len(), 5);
}

#[test]
fn digraph_dot_matches_library() {
    let path = fixtures_dir().join("egdigraph-c3.txt");
    let o = bott(&["digraph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let c = BottMatrix::from_entries(5, &[(1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5)]).unwrap();
    let d = build_digraph(&c);
    assert_eq!(stdout(&o), export_dot(&d, Some(&digraph_spin(&d))));
    assert_eq!(stdout(&o), stdout(&bott(&["digraph", "--dot", path.to_str().unwrap()])));

    let o = bott(&["digraph", "--no-verdict", "--matrix", "00;00"]);
    assert_eq!(stdout(&o), "digraph {\n  u1;\n  u2;\n}\n");
}

#[test]
fn digraph_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.dot");
    let o = bott(&["digraph", "--matrix", "011;000;000", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("u1 -> u3;"));
}

#[test]
fn format_checked_per_command() {
    assert_eq!(bott(&["digraph", "--matrix", "00;00", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(bott(&["check", "--matrix", "00;00", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(bott(&["check", "--matrix", "00;00", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn enumerate_text_csv_json() {
    let o = bott(&["enumerate", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("total=64\norientable_count=8\nspin_count=8\nmismatches=0\n"), "{out}");
    assert!(out.contains("reference_spin_set_matches=true"));

    let o = bott(&["enumerate", "-n", "3", "--format", "csv"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "n,total,orientable,spin,mismatches,elapsed_ms");
    assert!(lines[1].starts_with("3,8,2,2,0,"));

    let o = bott(&["enumerate", "-n", "5", "--sample", "300", "--seed", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 300);
    assert_eq!(v["mode"]["kind"], "sample");
}

#[test]
fn enumerate_thread_count_does_not_change_result() {
    let run = |t: &str| {
        let o = bott(&["enumerate", "-n", "6", "--threads", t, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(run("1"), run("4"));
    assert_eq!(run("1"), run("0"));
}

#[test]
fn enumerate_limits() {
    let o = bott(&["enumerate", "-n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds"));
    let o = Command::new(env!("CARGO_BIN_EXE_bott"))
        .args(["enumerate", "-n", "5"])
        .env("BOTT_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(bott(&["enumerate", "-n", "5", "--sample", "10"]).status.code(), Some(2));
    assert_eq!(bott(&["enumerate", "-n", "21", "--sample", "10", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn verify_paper_builtin() {
    let o = bott(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS be5-5"));
    assert!(!stdout(&o).contains("FAIL"));
    let o = bott(&["verify-paper", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_passed"], true);
}

#[test]
fn verify_paper_reports_failing_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixtures_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let o = bott(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    // be5-5 replaced by a spin matrix
    std::fs::write(dir.path().join("be5-5.txt"), "00000\n00000\n00000\n00000\n00000\n").unwrap();
    let o = bott(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL be5-5"));
    assert!(stdout(&o).contains("FAILED: be5-5"));
}

#[test]
fn verify_paper_bad_directory() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bott(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("nope");
    assert_eq!(bott(&["verify-paper", "--fixtures", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn help_and_usage() {
    let o = bott(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for cmd in ["check", "sw", "digraph", "enumerate", "verify-paper"] {
        assert!(stdout(&o).contains(cmd));
    }
    assert_eq!(bott(&[]).status.code(), Some(2));
    assert_eq!(bott(&["check"]).status.code(), Some(2));
    assert_eq!(bott(&["check", "x.txt", "--matrix", "00;00"]).status.code(), Some(2));
}
