use std::fs;
use std::process::Command;

use slicealg::report::{Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slicealg"))
}

#[test]
fn unknown_check_exits_2() {
    let out = bin().args(["verify", "nonexistent-id"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonexistent-id"));
}

#[test]
fn config_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"window": {"max_underlying": -1, "max_abs_w": 0, "max_abs_s": 0}}"#).unwrap();
    let out = bin().args(["verify", "e4-page", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at window"));
    fs::write(&cfg, r#"{"differentials": {"d3": {"q": "a"}}}"#).unwrap();
    let out = bin().args(["verify", "e4-page", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("differentials.d3.q"));
}

#[test]
fn deleted_differential_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let report = dir.path().join("r.jsonl");
    fs::write(&cfg, r#"{"height": 2, "differentials": {"d3": {"t1": "a*v1"}}}"#).unwrap();
    let out = bin()
        .args(["verify", "e4-page", "--max-underlying", "12", "--config"])
        .arg(&cfg)
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = fs::read_to_string(&report).unwrap();
    let r = Report::from_json(text.trim()).unwrap();
    assert_eq!(r.status, Status::Fail);
    let d = r.first_witness().unwrap();
    assert_eq!((d.c, d.w, d.s), (1, -2, 3));
}

#[test]
fn passing_check_exits_0_and_is_deterministic() {
    let run = || bin().args(["verify", "ko-hilbert", "thm5.9-restrictions", "--max-underlying", "12"]).output().unwrap();
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with(r#"{"check":"ko-hilbert","status":"pass""#));
}

#[test]
fn charts() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("e4.svg");
    let out = bin()
        .args(["chart", "E4", "--height", "1", "--max-underlying", "12", "--format", "svg", "--out"])
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    let out = bin().args(["chart", "E2", "--height", "1", "--max-underlying", "4"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("d3: (2,-2) -> (1,1)"), "{text}");
    let out = bin().args(["chart", "E9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["chart", "E4", "--out", "/nonexistent/dir/x.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lists_every_check() {
    let out = bin().arg("list-checks").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("thm5.9-coactions"));
}
