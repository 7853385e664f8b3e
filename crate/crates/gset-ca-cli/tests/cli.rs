//! End-to-end tests of the command-line interface: exit-code contract,
//! determinism, and the documented file formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gset-ca"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn builtin_rule(dir: &TempDir, name: &str) -> PathBuf {
    write(
        dir,
        &format!("{name}.json"),
        &format!("{{\"builtin\": \"{name}\"}}"),
    )
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const GLIDER: &str =
    r#"{"default": "0", "cells": [[1,0,"1"],[2,1,"1"],[0,2,"1"],[1,2,"1"],[2,2,"1"]]}"#;

#[test]
fn run_identity_returns_input() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "identity");
    let config = write(&dir, "x.json", GLIDER);
    let out_path = dir.path().join("out.json");

    let out = run(&[
        "run",
        "--rule",
        rule.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "5",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let got: serde_json::Value = serde_json::from_str(&read(&out_path)).unwrap();
    let want: serde_json::Value = serde_json::from_str(GLIDER).unwrap();
    let mut got = got["cells"].as_array().unwrap().clone();
    let mut want = want["cells"].as_array().unwrap().clone();
    got.sort_by_key(|v| v.to_string());
    want.sort_by_key(|v| v.to_string());
    assert_eq!(got, want);
}

#[test]
fn run_glider_four_steps_translates_diagonally() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "game-of-life");
    let config = write(&dir, "x.json", GLIDER);
    let out_path = dir.path().join("out.json");

    let out = run(&[
        "run",
        "--rule",
        rule.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "4",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let got: serde_json::Value = serde_json::from_str(&read(&out_path)).unwrap();
    let cells: Vec<(i64, i64)> = got["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_i64().unwrap(), c[1].as_i64().unwrap()))
        .collect();
    let mut expected = vec![(2, 1), (3, 2), (1, 3), (2, 3), (3, 3)];
    expected.sort();
    let mut got = cells;
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn run_fairy_lights_twice_is_identity() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "fairy-lights");
    let config = write(
        &dir,
        "x.json",
        r#"{"default": "0", "cells": [[0,0,"1"],[2,-1,"1"],[-3,4,"1"]]}"#,
    );
    let out_path = dir.path().join("out.json");

    let out = run(&[
        "run",
        "--rule",
        rule.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "2",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_str(&read(&out_path)).unwrap();
    assert_eq!(got["cells"].as_array().unwrap().len(), 3);
}

#[test]
fn run_text_window_and_frames() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "game-of-life");
    let config = write(&dir, "x.json", GLIDER);
    let out_path = dir.path().join("out.txt");

    let out = run(&[
        "run",
        "--rule",
        rule.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "2",
        "--window",
        "-1,-1,4,4",
        "--out",
        out_path.to_str().unwrap(),
        "--frames",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = read(&out_path);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.len() == 6));
    assert!(dir.path().join("out_f1.txt").exists());
    assert!(dir.path().join("out_f2.txt").exists());
}

#[test]
fn deterministic_outputs() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "game-of-life");
    let config = write(&dir, "x.json", GLIDER);
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    for out_path in [&a, &b] {
        let out = run(&[
            "run",
            "--rule",
            rule.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
            "--steps",
            "3",
            "--window",
            "-2,-2,5,5",
            "--out",
            out_path.to_str().unwrap(),
            "--format",
            "pgm",
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(read(&a), read(&b));
    assert!(read(&a).starts_with("P2\n8 8\n1\n"));

    // identical seeds give byte-identical verification transcripts
    let sd = builtin_rule(&dir, "state-shift-d");
    let transcript = |seed: &str| {
        let out = run(&[
            "verify-compose",
            "--rule1",
            sd.to_str().unwrap(),
            "--rule2",
            sd.to_str().unwrap(),
            "--trials",
            "20",
            "--seed",
            seed,
            "--radius",
            "4",
        ]);
        (out.status.code(), stdout_of(&out))
    };
    assert_eq!(transcript("9"), transcript("9"));
}

#[test]
fn analyze_min_memory_prints_nine_cells() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "game-of-life");
    let out = run(&["analyze", "min-memory", "--rule", rule.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("9 cells"));

    // a life rule padded with a far cell it never reads: the pad drops out
    let padded = write(
        &dir,
        "padded.json",
        r#"{
            "states": ["0", "1"],
            "quiescent": "0",
            "universe": "square-tessellation",
            "coordinate_system": {"preset": "translations-only", "origin": [0, 0]},
            "memory": [[-1,-1],[-1,0],[-1,1],[0,-1],[0,0],[0,1],[1,-1],[1,0],[1,1],[5,5]],
            "rule": {"type": "life-sum"}
        }"#,
    );
    let out = run(&["analyze", "min-memory", "--rule", padded.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("9 cells"));
    assert!(!stdout.contains("(5,5)"));
}

#[test]
fn analyze_equivariance_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = builtin_rule(&dir, "state-shift-44");
    let out = run(&[
        "analyze",
        "equivariance",
        "--rule",
        bad.to_str().unwrap(),
        "--radius",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("not equivariant"));

    let good = builtin_rule(&dir, "fairy-lights");
    let out = run(&[
        "analyze",
        "equivariance",
        "--rule",
        good.to_str().unwrap(),
        "--radius",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("no obstruction"));
}

#[test]
fn analyze_invariance_element_list() {
    let dir = TempDir::new().unwrap();
    let rule = builtin_rule(&dir, "game-of-life");
    let out = run(&[
        "analyze",
        "invariance",
        "--rule",
        rule.to_str().unwrap(),
        "--elements",
        "R0:0,0",
        "--elements",
        "R90:1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let shift = builtin_rule(&dir, "state-shift-44");
    let out = run(&[
        "analyze",
        "invariance",
        "--rule",
        shift.to_str().unwrap(),
        "--elements",
        "R90:1,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("violated"));
}

#[test]
fn compose_and_verify_margolus() {
    let dir = TempDir::new().unwrap();
    let tau0 = builtin_rule(&dir, "margolus-tau0");
    let tau1 = builtin_rule(&dir, "margolus-tau1");
    let out_path = dir.path().join("billiard.json");

    let out = run(&[
        "compose",
        "--rule1",
        tau1.to_str().unwrap(),
        "--rule2",
        tau0.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("16 cells"));

    let out = run(&[
        "verify-compose",
        "--rule1",
        tau1.to_str().unwrap(),
        "--rule2",
        tau0.to_str().unwrap(),
        "--trials",
        "30",
        "--seed",
        "5",
        "--radius",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("consistent"));
}

#[test]
fn verify_compose_counterexample_exit_code() {
    let dir = TempDir::new().unwrap();
    let sd = builtin_rule(&dir, "state-shift-d");
    let out = run(&[
        "verify-compose",
        "--rule1",
        sd.to_str().unwrap(),
        "--rule2",
        sd.to_str().unwrap(),
        "--trials",
        "50",
        "--seed",
        "3",
        "--radius",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("counterexample"));
}

#[test]
fn validation_errors_exit_two() {
    let dir = TempDir::new().unwrap();

    let missing = run(&[
        "analyze",
        "min-memory",
        "--rule",
        dir.path().join("absent.json").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));

    let partial = write(
        &dir,
        "partial.json",
        r#"{
            "states": ["0", "1"],
            "quiescent": "0",
            "universe": "square-tessellation",
            "coordinate_system": {"preset": "translations-only"},
            "memory": [[0, 0]],
            "rule": {"type": "table", "entries": {"0": "0"}}
        }"#,
    );
    let out = run(&["analyze", "min-memory", "--rule", partial.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not total"));

    let rule = builtin_rule(&dir, "identity");
    let config = write(&dir, "x.json", GLIDER);
    let out = run(&[
        "run",
        "--rule",
        rule.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "1",
        "--window",
        "1,2,3",
        "--out",
        dir.path().join("o.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hyp_build_layer_counts_and_svg() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("p.svg");
    let out = run(&["hyp", "build", "--layers", "3", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = stdout_of(&out);
    for line in [
        "layer 0: 1 cells",
        "layer 1: 8 cells",
        "layer 2: 32 cells",
        "layer 3: 120 cells",
        "total: 161 cells",
    ] {
        assert!(stdout.contains(line), "missing {line:?} in {stdout}");
    }

    let one = dir.path().join("one.svg");
    let out = run(&["hyp", "build", "--layers", "1", "--out", one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&one).matches("<polygon").count(), 9);
}

#[test]
fn hyp_run_empty_stays_empty() {
    let dir = TempDir::new().unwrap();
    let alive = write(&dir, "alive.json", "[]");
    let svg = dir.path().join("r.svg");
    let out = run(&[
        "hyp",
        "run",
        "--layers",
        "2",
        "--alive",
        alive.to_str().unwrap(),
        "--steps",
        "3",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("alive after 3 steps: []"));

    let bad = write(&dir, "bad.json", "[999]");
    let out = run(&[
        "hyp",
        "run",
        "--layers",
        "1",
        "--alive",
        bad.to_str().unwrap(),
        "--steps",
        "1",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn composed_rule_file_reloads() {
    let dir = TempDir::new().unwrap();
    let sd = builtin_rule(&dir, "state-shift-d");
    let composed = dir.path().join("dd.json");
    let out = run(&[
        "compose",
        "--rule1",
        sd.to_str().unwrap(),
        "--rule2",
        sd.to_str().unwrap(),
        "--out",
        composed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // the composed file is a valid rule file and runs
    let config = write(&dir, "x.json", r#"{"default": "0", "cells": [[1,2,"1"]]}"#);
    let out_path = dir.path().join("o.json");
    let out = run(&[
        "run",
        "--rule",
        composed.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "1",
        "--out",
        out_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_str(&read(&out_path)).unwrap();
    // the composed shift reads (-1,1) through the corner system: the state
    // at (1,2) lands at (2,1)
    assert_eq!(got["cells"][0][0], 2);
    assert_eq!(got["cells"][0][1], 1);
}
