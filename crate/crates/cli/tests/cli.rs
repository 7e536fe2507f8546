use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ftcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn cover_reports_merge_level() {
    let dir = scratch("cover");
    let report = dir.join("report.json");
    let out = ftcs(&[
        "cover",
        "--alphabet",
        "ab",
        "--forbidden",
        "aaaa",
        "--forbidden",
        "abaa",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nu: 5"), "{text}");
    assert!(text.contains("language irreducible: yes"), "{text}");
    assert!(text.contains("merged: aaa ~ aba at level 3"), "{text}");
    let json = fs::read_to_string(report).unwrap();
    assert!(json.contains("\"nu\": 5"));
}

#[test]
fn check_passes_on_a_reducible_set() {
    let out = ftcs(&[
        "check",
        "--alphabet",
        "01",
        "--forbidden",
        "00",
        "--forbidden",
        "1101",
        "--forbidden",
        "111",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("language: reducible"));
}

#[test]
fn check_reads_a_file() {
    let dir = scratch("check_file");
    let path = dir.join("set.txt");
    fs::write(&path, "alphabet: a b c\nabc\nba\n").unwrap();
    let out = ftcs(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn build_writes_both_graphs() {
    let dir = scratch("build");
    let out = ftcs(&[
        "build",
        "--alphabet",
        "ab",
        "--forbidden",
        "aab",
        "--format",
        "dot",
        "--format",
        "json",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for name in [
        "automaton.dot",
        "automaton.json",
        "presentation.dot",
        "presentation.json",
    ] {
        assert!(dir.join(name).is_file(), "{name} missing");
    }
    let dot = fs::read_to_string(dir.join("automaton.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn export_round_trips() {
    let dir = scratch("export");
    let out = ftcs(&[
        "build",
        "--alphabet",
        "abc",
        "--forbidden",
        "abca",
        "--forbidden",
        "bb",
        "--format",
        "json",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = dir.join("automaton.json");
    let dot = dir.join("back.dot");
    let again = dir.join("back.json");
    let out = ftcs(&[
        "export",
        json.to_str().unwrap(),
        "--format",
        "dot",
        "--out",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = ftcs(&[
        "export",
        dot.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(json).unwrap(), fs::read(again).unwrap());
}

#[test]
fn bad_input_exits_2() {
    let out = ftcs(&["cover", "--alphabet", "ab", "--forbidden", "ac"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let dir = scratch("bad");
    let path = dir.join("broken.json");
    fs::write(&path, "{\"alphabet\": [").unwrap();
    let out = ftcs(&["export", path.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ftcs(&[
        "check",
        "--input",
        dir.join("missing.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic() {
    let run = |jobs: &str| {
        let out = ftcs(&[
            "sweep",
            "--alphabet",
            "abc",
            "--max-n",
            "4",
            "--max-words",
            "3",
            "--samples",
            "60",
            "--seed",
            "11",
            "--jobs",
            jobs,
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert!(one.contains("instances: 60"));
    assert!(one.contains("failures: 0"));

    let out = ftcs(&["sweep", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failures: 0"));
}
