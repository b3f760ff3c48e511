//! Exit-code and artifact contract of the command-line front end.

use std::path::Path;
use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_symctrl")
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

const BASE: &str = r#"{
  "command": "analyze",
  "model": { "kind": "torus", "n": 1, "l_max": 4 },
  "operator_a": { "type": "diagonal", "sign": -1.0 },
  "operator_b": { "type": "identity" },
  "horizon": 1.0
}"#;

#[test]
fn analyze_writes_report_and_csv() {
    let tmp = std::env::temp_dir().join("symctrl-cli-analyze");
    std::fs::create_dir_all(&tmp).unwrap();
    let config = write_config(&tmp, BASE);
    let out = tmp.join("out");
    let output = Command::new(exe())
        .args(["--config"])
        .arg(&config)
        .args(["--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("verdict:"), "stdout: {stdout}");
    let csv = std::fs::read_to_string(out.join("blocks.csv")).unwrap();
    // header + one row per analyzed block
    assert_eq!(csv.lines().count(), 1 + 5);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["analysis"]["block_reports"].as_array().unwrap().len(), 5);
}

#[test]
fn negative_horizon_exits_2_naming_the_field() {
    let tmp = std::env::temp_dir().join("symctrl-cli-badhorizon");
    std::fs::create_dir_all(&tmp).unwrap();
    let config = write_config(&tmp, &BASE.replace("\"horizon\": 1.0", "\"horizon\": -1.0"));
    let output = Command::new(exe())
        .args(["--config"])
        .arg(&config)
        .args(["--out"])
        .arg(tmp.join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("horizon"), "stderr: {stderr}");
}

#[test]
fn synthesize_zero_targets_reports_zero_energy() {
    let tmp = std::env::temp_dir().join("symctrl-cli-synth");
    std::fs::create_dir_all(&tmp).unwrap();
    let config = write_config(
        &tmp,
        &BASE.replace("\"command\": \"analyze\"", "\"command\": \"synthesize\""),
    );
    let out = tmp.join("out");
    let output = Command::new(exe())
        .args(["--config"])
        .arg(&config)
        .args(["--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let total = report["synthesis"]["summary"]["total_energy"].as_f64().unwrap();
    assert!(total.abs() < 1e-12, "total energy {total}");
    assert!(out.join("trajectory_0.csv").exists());
    assert!(out.join("trajectory_4.csv").exists());
}

#[test]
fn override_changes_the_effective_config() {
    let tmp = std::env::temp_dir().join("symctrl-cli-override");
    std::fs::create_dir_all(&tmp).unwrap();
    let config = write_config(&tmp, BASE);
    let out = tmp.join("out");
    let output = Command::new(exe())
        .args(["--config"])
        .arg(&config)
        .args(["--out"])
        .arg(&out)
        .args(["--override", "model.l_max=2", "--threads", "2"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let csv = std::fs::read_to_string(out.join("blocks.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3);
}
