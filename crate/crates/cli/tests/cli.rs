use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sinusoid::config::{parse_config_text, resolve, Settings};
use sinusoid::output::{to_json, trajectory_csv};
use sinusoid::suite::RunOutput;

fn sinusoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sinusoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_file(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn identical_runs_write_identical_json() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = sinusoid(&[
            "all",
            "--system",
            "pt",
            "--g",
            "2",
            "--h",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let v = json_file(&a);
    assert_eq!(v["system"], "pt");
    assert_eq!(v["N"], 30);
    assert_eq!(v["G"], 4);
    assert_eq!(v["params"]["g"].as_f64(), Some(2.0));
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "potential_reconstruction"));
    for c in checks {
        for key in ["name", "max_residual", "tolerance", "pass", "details"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn failing_check_writes_report_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fail.json");
    let o = sinusoid(&[
        "classical",
        "--system",
        "do",
        "--dt",
        "0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_file(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["pass"] == false));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(
        sinusoid(&["spectrum", "--system", "xx"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sinusoid(&["spectrum", "--system", "aw", "--q", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sinusoid(&["spectrum", "--system", "pt", "--n", "4", "--guard", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sinusoid(&["spectrum"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "system = do\nwidth = 3\n").unwrap();
    assert_eq!(
        sinusoid(&["spectrum", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oscillator_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let o = sinusoid(&[
        "classical",
        "--system",
        "do",
        "--a",
        "1",
        "--x0",
        "0.5",
        "--p0",
        "0.3",
        "--tend",
        "10",
        "--traj",
        traj.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let text = fs::read_to_string(&traj).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,eta_closed,eta_numeric,abs_err"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10_001);
    assert!(rows.iter().all(|r| r.len() == 4 && r[3] <= 1e-6));
    assert_eq!(rows.last().unwrap()[0], 10.0);
}

#[test]
fn config_blocks_are_separate_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    fs::write(
        &cfg,
        "# sweep\nsystem = do\na = 0.5\n\nsystem = aw\na = 0.1, 0.2, -0.1, 0.3\nq = 0.5\n",
    )
    .unwrap();
    let out = dir.path().join("sweep.json");
    let o = sinusoid(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_file(&out);
    let runs = v.as_array().unwrap();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[0]["system"], "do");
    assert_eq!(runs[1]["system"], "aw");
    assert_eq!(runs[1]["N"], 20);
}

#[test]
fn config_parsing() {
    let blocks = parse_config_text("system = pt\ng = 2 # comment\n\n\nsystem = do\n").unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0]["g"], "2");
    assert!(parse_config_text("system pt\n").is_err());
    let mut flags = Settings::new();
    flags.insert("n".into(), "12".into());
    let runs = resolve(&flags, Some(blocks)).unwrap();
    assert_eq!(runs[0].truncation.dim(), 12);
    assert_eq!(runs[1].lambda.re, 0.3);
}

#[test]
fn empty_report_and_trajectory_formats() {
    let mut flags = Settings::new();
    flags.insert("system".into(), "do".into());
    let cfg = resolve(&flags, None).unwrap().remove(0);
    let run = RunOutput {
        config: cfg,
        checks: vec![],
        trajectory: None,
    };
    let v: serde_json::Value = serde_json::from_str(&to_json(&[run]).unwrap()).unwrap();
    assert_eq!(v["checks"], serde_json::json!([]));
    assert_eq!(
        trajectory_csv(&[]).unwrap(),
        "t,eta_closed,eta_numeric,abs_err\n"
    );
}
