//! End-to-end tests of the `decaylab` binary: exit codes, file round
//! trips, and cross-command pipelines.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn decaylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decaylab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn usage_error_exits_1() {
    let out = decaylab(&["simulate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));

    let out = decaylab(&["scenario", "not_a_scenario", "--seed", "1", "--out-dir", "/tmp/x"]);
    // unknown scenario name is a usage-class problem surfaced as data error
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn help_exits_0() {
    let out = decaylab(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("simulate"));
}

#[test]
fn missing_input_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = decaylab(&[
        "analyze",
        "--input",
        "/nonexistent/counts.csv",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn breakdown_voltage_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("counts.csv");
    let out = decaylab(&[
        "simulate",
        "--seed",
        "1",
        "--voltage",
        "1250",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("breakdown"));
}

#[test]
fn simulate_then_analyze_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let counts = dir.path().join("counts.csv");
    let report = dir.path().join("report.json");
    let bits = dir.path().join("bits.txt");

    let out = decaylab(&[
        "simulate",
        "--seed",
        "7",
        "--runs",
        "2000",
        "--out",
        counts.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let out = decaylab(&[
        "analyze",
        "--input",
        counts.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
        "--bits-out",
        bits.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["schema"], "decaylab_report_v1");
    assert_eq!(doc["threshold"]["n_counts"], 2000);

    // the bits sidecar feeds the battery subcommand
    let battery_report = dir.path().join("battery.json");
    let out = decaylab(&[
        "battery",
        "--bits",
        bits.to_str().unwrap(),
        "--report",
        battery_report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&battery_report).unwrap()).unwrap();
    assert_eq!(doc["sequence_length"], 2000);
}

#[test]
fn plateau_reports_operating_voltage() {
    let dir = tempfile::tempdir().unwrap();
    let scan = dir.path().join("scan.csv");
    let out = decaylab(&[
        "plateau",
        "--seed",
        "3",
        "--source",
        "co60",
        "--distance-cm",
        "2.5",
        "--out",
        scan.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let voltage: f64 = text
        .trim()
        .strip_prefix("operating voltage: ")
        .and_then(|s| s.strip_suffix(" V"))
        .expect("voltage line")
        .parse()
        .unwrap();
    assert!((720.0..1200.0).contains(&voltage), "{voltage}");
    assert!(fs::read_to_string(&scan).unwrap().lines().count() > 20);
}

#[test]
fn scenario_products_are_deterministic() {
    let run = |dir: &Path| {
        let out = decaylab(&[
            "scenario",
            "preset_time_comparison",
            "--seed",
            "11",
            "--out-dir",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        fs::read(dir.join("report.json")).unwrap()
    };
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    assert_eq!(run(dir_a.path()), run(dir_b.path()));
}
