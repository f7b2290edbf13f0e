use std::fs;
use std::process::{Command, Output};

fn depsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depsym")).args(args).output().expect("spawn depsym")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_shows_every_preset() {
    let out = depsym(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() >= 14);
    for name in ["IIA1-rotz", "IIC3-coherent-nonzero-b", "IIIC-generator"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn preset_writes_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("rotz");
    let out = depsym(&["preset", "IIA1-isotropic", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["symmetries"][0]["verdict"], "holds");
    let csv = fs::read_to_string(out_dir.join("trajectories.csv")).unwrap();
    assert!(csv.starts_with("t,observable,component,re,im"));
}

#[test]
fn decoupler_alias_scans_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out = depsym(&["preset", "IIIB-decoupler", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["constants_scan"]["classification"]["class"], "all_constant");
    assert!(dir.path().join("scan.csv").exists());
}

#[test]
fn trajectories_only_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("plain.json");
    fs::write(
        &cfg,
        r#"{"hamiltonian": {"family": "xyz", "gamma": [1.0, 0.5, 0.2]},
            "env_state": {"kind": "maximally_mixed"},
            "unitaries": [], "constants_scan": false}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = depsym(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--grid-points", "11"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(out_dir.join("trajectories.csv").exists());
    assert!(!out_dir.join("scan.csv").exists());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["points"], 11);
    assert_eq!(report["symmetries"].as_array().unwrap().len(), 0);
}

#[test]
fn unmet_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("wrong.json");
    fs::write(
        &cfg,
        r#"{"hamiltonian": {"family": "xyz", "gamma": [0.5, 1.4, -0.9]},
            "env_state": {"kind": "bloch", "r": [0.0, 0.0, 0.7]},
            "unitaries": [{"kind": "rot_z", "u": 0.9}],
            "expect": {"symmetries": ["holds"]}}"#,
    )
    .unwrap();
    let out = depsym(&["run", cfg.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAILED"));
}

#[test]
fn validate_reports_line_of_bad_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("typo.json");
    fs::write(
        &cfg,
        "{\n  \"hamiltonian\": {\"family\": \"xyz\", \"gamma\": [1, 1, 1]},\n  \"env_state\": {\"kind\": \"maximally_mixed\"},\n  \"unitarys\": []\n}\n",
    )
    .unwrap();
    let out = depsym(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn dump_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = depsym(&["preset", "IIB-spin-star-3", "--dump"]);
    assert!(out.status.success());
    let cfg = dir.path().join("star.json");
    fs::write(&cfg, stdout(&out)).unwrap();
    assert!(depsym(&["validate", cfg.to_str().unwrap()]).status.success());
}

#[test]
fn rejects_inverted_tolerances() {
    let dir = tempfile::tempdir().unwrap();
    let out = depsym(&[
        "preset", "IIA1-rotz", "--tol-accept", "1e-3", "--tol-reject", "1e-6", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
