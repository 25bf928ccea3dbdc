use std::process::Command;

use grassvol_cli::{
    check_ids, parse_json_report, render_report, run_suite, CliError, Config, ReportFormat, Status,
    CSV_HEADER,
};

fn grassvol() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grassvol"));
    c.env_remove("GRASSVOL_CONFIG");
    c
}

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn exact_walsh_check_has_zero_error() {
    let r = run_suite(&ids(&["gates.walsh.t2"]), &Config::default()).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].status, Status::Pass);
    assert_eq!(r[0].max_error, 0.0);
    assert_eq!(r[0].seed, None);
}

#[test]
fn selection_errors() {
    assert!(matches!(run_suite(&[], &Config::default()), Err(CliError::EmptySelection)));
    assert!(matches!(
        run_suite(&ids(&["gates.nope"]), &Config::default()),
        Err(CliError::UnknownCheck(id)) if id == "gates.nope"
    ));
}

#[test]
fn duplicates_collapse_and_output_is_sorted() {
    let r = run_suite(&ids(&["pauli.weyl.n3", "gates.walsh.t1", "pauli.weyl.n3"]), &Config::default()).unwrap();
    let got: Vec<&str> = r.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(got, ["gates.walsh.t1", "pauli.weyl.n3"]);
}

#[test]
fn ids_are_unique_and_anchored() {
    let all = grassvol_cli::registry();
    let mut seen = std::collections::BTreeSet::new();
    for c in &all {
        assert!(seen.insert(c.id.clone()), "duplicate {}", c.id);
        assert!(!c.anchor.is_empty());
    }
    assert_eq!(check_ids().len(), all.len());
}

#[test]
fn reports_round_trip() {
    let r = run_suite(&ids(&["synth.gate-counts", "flag.perturbation-rejection"]), &Config::default()).unwrap();
    let json = render_report(&r, ReportFormat::Json).unwrap();
    assert_eq!(parse_json_report(&json).unwrap(), r);
    let csv = render_report(&r, ReportFormat::Csv).unwrap();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    assert_eq!(csv.lines().count(), 3);
    assert_eq!(render_report(&r, ReportFormat::Json).unwrap(), json);
}

#[test]
fn exit_codes() {
    let ok = grassvol().args(["verify-all", "--only", "gates.walsh.t2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let unknown = grassvol().args(["verify-all", "--only", "bogus"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let usage = grassvol().args(["gates", "verify", "--t", "x"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    // zero tolerance makes a rounding-level check fail
    let fail = grassvol()
        .args(["--tol", "0", "verify-all", "--only", "gates.walsh-involution.t1"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
}

#[test]
fn flags_override_file_and_env_is_a_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "seed = 7\nsynth_trials = 3\n").unwrap();
    let seed_of = |out: std::process::Output| {
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        parse_json_report(&String::from_utf8(out.stdout).unwrap()).unwrap()[0].seed
    };
    let from_file = grassvol()
        .args(["--config", path.to_str().unwrap(), "verify-all", "--only", "synth.ccu.random"])
        .output()
        .unwrap();
    assert_eq!(seed_of(from_file), Some(7));
    let flag_wins = grassvol()
        .args(["--config", path.to_str().unwrap(), "--seed", "9", "verify-all", "--only", "synth.ccu.random"])
        .output()
        .unwrap();
    assert_eq!(seed_of(flag_wins), Some(9));
    let from_env = grassvol()
        .env("GRASSVOL_CONFIG", &path)
        .args(["verify-all", "--only", "synth.ccu.random"])
        .output()
        .unwrap();
    assert_eq!(seed_of(from_env), Some(7));

    std::fs::write(&path, "seed = seven\n").unwrap();
    let bad = grassvol().args(["--config", path.to_str().unwrap(), "verify-all"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let status = grassvol()
        .args(["verify-all", "--only", "gates.cnot.t2,pauli.worked-example.n3", "--csv", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("gates.cnot.t2,cnot permutation matrices,pass,0.0,0.0,"));
}

#[test]
fn volume_subcommand_json() {
    let out = grassvol()
        .args(["--json", "--seed", "3", "grassmann", "verify-volume", "--k", "1", "--n", "2", "--samples", "20000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["k", "n", "closed_form", "mc_mean", "mc_stderr", "z_score", "samples", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["samples"], 20000);
    assert_eq!(v["seed"], 3);
    assert!((v["closed_form"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn holonomy_subcommand_json() {
    let out = grassvol()
        .args(["--json", "holonomy", "run", "--family", "degenerate-m2", "--loop", "circle", "--radius", "0.5", "--steps", "256"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gamma"]["rows"], 2);
    assert!(v["unitarity_deviation"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["convergence"].as_array().unwrap().len(), 4);
    let bad = grassvol().args(["holonomy", "run", "--family", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn classify_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, r#"{"rows":3,"cols":3,"entries":[[2,0],[0,0],[0,0],[0,0],[-1,0],[0,0],[0,0],[0,0],[2,0]]}"#).unwrap();
    let out = grassvol().args(["--json", "flag", "classify", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spectral_type"], serde_json::json!([[-1, 1], [2, 2]]));
    assert_eq!(v["complex_dimension"], 2);

    std::fs::write(&path, r#"{"rows":1,"cols":1,"entries":[[0.5,0]]}"#).unwrap();
    let out = grassvol().args(["flag", "classify", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn module_subcommands_pass() {
    for args in [
        vec!["gates", "verify", "--t", "3"],
        vec!["pauli", "verify", "--n", "5"],
        vec!["synth", "verify", "--controls", "3", "--trials", "5"],
    ] {
        let out = grassvol().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    }
}
