mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SMALL: &str = r#"{"n_epochs": 24, "n_freeze": 6, "seed": 3}"#;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voronoi-distill"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn distill(dir: &Path, sub: &str, extra: &[&str]) -> String {
    let cfg = write(dir, "small.json", SMALL);
    let out = dir.join(sub).display().to_string();
    let mut args = vec!["distill", "--config", &cfg, "--out", &out];
    args.extend_from_slice(extra);
    let o = cli(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

#[test]
fn distill_is_byte_reproducible() {
    let tmp = TempDir::new().unwrap();
    let a = distill(tmp.path(), "a", &[]);
    let b = distill(tmp.path(), "b", &[]);
    for f in ["bundle.json", "events.jsonl"] {
        let (x, y) = (fs::read(Path::new(&a).join(f)).unwrap(), fs::read(Path::new(&b).join(f)).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{f} differs");
    }
    let cfg: Value = serde_json::from_str(&fs::read_to_string(Path::new(&a).join("config.json")).unwrap()).unwrap();
    assert_eq!(cfg["n_epochs"], 24);
    assert_eq!(cfg["env"], "simplegoal-v0");
    let events = fs::read_to_string(Path::new(&a).join("events.jsonl")).unwrap();
    assert_eq!(events.lines().count(), 24);
}

#[test]
fn config_errors_exit_2() {
    let tmp = TempDir::new().unwrap();
    let bad = write(tmp.path(), "bad.json", r#"{"n_epochs": 10, "max_pol_los": 0.1}"#);
    let o = cli(&["distill", "--config", &bad, "--out", &tmp.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("max_pol_los"), "{}", stderr(&o));

    let missing = tmp.path().join("nope.json").display().to_string();
    assert_eq!(cli(&["distill", "--config", &missing]).status.code(), Some(2));
    assert_eq!(cli(&["inspect", &missing]).status.code(), Some(2));
    assert_eq!(cli(&["distill", "--env", "cartpole-v1"]).status.code(), Some(2));
}

#[test]
fn codeword_cap_exits_3() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(tmp.path(), "cap.json", r#"{"n_epochs": 30, "n_freeze": 5, "max_cells": 1}"#);
    let o = cli(&["distill", "--config", &cfg, "--out", &tmp.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(!tmp.path().join("bundle.json").exists());
}

#[test]
fn eval_summarizes_a_returns_file() {
    let tmp = TempDir::new().unwrap();
    let returns = write(tmp.path(), "returns.json", "[4.0, 1.0, 3.0, 100.0, 2.0]");
    let out = tmp.path().join("r").display().to_string();
    let o = cli(&["eval", "--returns", &returns, "--out", &out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(Path::new(&out).join("report.json")).unwrap()).unwrap();
    let s = &report["stats"];
    assert_eq!(s["count"], 5);
    assert_eq!(s["mean"], 22.0);
    assert_eq!(s["median"], 3.0);
    assert_eq!((s["q1"].as_f64(), s["q3"].as_f64(), s["iqr"].as_f64()), (Some(2.0), Some(4.0), Some(2.0)));
    assert_eq!(s["outlier_count"], 1);
    assert_eq!(s["outlier_values"][0], 100.0);
    assert_eq!(s["coverage"], 0.8);

    let bad = write(tmp.path(), "bad.json", r#"{"returns": 1}"#);
    assert_eq!(cli(&["eval", "--returns", &bad, "--out", &out]).status.code(), Some(2));
}

#[test]
fn eval_of_one_episode_has_no_spread() {
    let tmp = TempDir::new().unwrap();
    let run = distill(tmp.path(), "run", &[]);
    let bundle = Path::new(&run).join("bundle.json").display().to_string();
    let o = cli(&["eval", "--bundle", &bundle, "--episodes", "1", "--out", &run]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(Path::new(&run).join("report.json")).unwrap()).unwrap();
    assert_eq!(report["stats"]["iqr"], 0.0);
    assert_eq!(report["stats"]["coverage"], 1.0);
    assert_eq!(report["returns"].as_array().unwrap().len(), 1);
}

#[test]
fn inspect_prints_one_row_per_cell() {
    let tmp = TempDir::new().unwrap();
    let run = distill(tmp.path(), "run", &[]);
    let bundle_path = Path::new(&run).join("bundle.json");
    let bundle: Value = serde_json::from_str(&fs::read_to_string(&bundle_path).unwrap()).unwrap();
    let cells = bundle["codewords"].as_array().unwrap().len();
    let o = cli(&["inspect", &bundle_path.display().to_string(), "--out", &run]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), cells);
    assert!(text.lines().all(|l| l.contains("dx = ") && l.contains("dy = ")));
    assert_eq!(fs::read_to_string(Path::new(&run).join("inspect.txt")).unwrap(), text);
}

#[test]
fn viz_writes_grids_and_svg() {
    let tmp = TempDir::new().unwrap();
    let run = distill(tmp.path(), "run", &[]);
    let bundle = Path::new(&run).join("bundle.json").display().to_string();
    let o = cli(&["viz", &bundle, "--resolution", "7", "--out", &run]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(Path::new(&run).join("quiver.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,dx,dy,cell"));
    assert_eq!(lines.count(), 49);
    let svg = fs::read_to_string(Path::new(&run).join("partition.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(!Path::new(&run).join("heatmap.csv").exists());
}

#[test]
fn viz_rejects_other_state_dimensions() {
    let tmp = TempDir::new().unwrap();
    let bundle = write(
        tmp.path(),
        "b3.json",
        r#"{"format_version": "1", "env": "custom", "state_dim": 3, "action_dim": 1,
            "codewords": [[0.0, 0.0, 0.0]],
            "subpolicies": [{"cell": 0, "weights": [[1.0, 2.0, 3.0]], "bias": [0.5]}],
            "action_bounds": [{"low": -1.0, "high": 1.0}],
            "provenance": {"seed": null, "config_hash": null, "teacher": null}}"#,
    );
    let o = cli(&["viz", &bundle, "--out", &tmp.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("visualization requires 2-D state"), "{}", stderr(&o));
    // Inspect still works, with fallback names.
    let o = cli(&["inspect", &bundle]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "  0  [0.0000, 0.0000, 0.0000]  a0 = +1.0000x0 +2.0000x1 +3.0000x2 +0.5000\n"
    );
}

#[test]
fn file_teacher_is_loaded() {
    let tmp = TempDir::new().unwrap();
    let teacher = common::linear_teacher(vec![vec![0.3, -0.2], vec![0.1, 0.25]], vec![0.1, -0.2]);
    let path = tmp.path().join("mlp.json");
    teacher.save(&path).unwrap();
    let spec = format!("file:{}", path.display());
    let run = distill(tmp.path(), "run", &["--teacher", &spec]);
    let bundle: Value = serde_json::from_str(&fs::read_to_string(Path::new(&run).join("bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["provenance"]["teacher"], Value::String(spec));

    let garbage = write(tmp.path(), "garbage.json", "{}");
    let o = cli(&["distill", "--teacher", &format!("file:{garbage}"), "--out", &run]);
    assert_eq!(o.status.code(), Some(2));
}
