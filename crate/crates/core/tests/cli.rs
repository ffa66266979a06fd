use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use nvlevels::cli::{run, RunConfig, Subcommand};
use nvlevels::nvmodel::PiezoParams;

const FAST: &str = r#"{
    "quadrature": {"samples": 65536, "batches": 16, "target_relative_error": 0.25},
    "strain_scan": {"strain_ghz": {"start": 0, "stop": 20, "points": 11}},
    "spin_spin": {"nitrogen_population": {"start": 0, "stop": 1, "points": 3}}
}"#;

fn config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("config.json");
    fs::write(&p, text).unwrap();
    p
}

fn read_all(files: &[PathBuf]) -> Vec<(String, String)> {
    files
        .iter()
        .map(|f| (f.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(f).unwrap()))
        .collect()
}

#[test]
fn every_subcommand_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), FAST);
    for cmd in Subcommand::ALL {
        if cmd == Subcommand::Validate {
            continue;
        }
        let a = run(cmd, &cfg, &tmp.path().join("a"), None).unwrap();
        let b = run(cmd, &cfg, &tmp.path().join("b"), None).unwrap();
        assert!(!a.files.is_empty(), "{}", cmd.name());
        assert_eq!(read_all(&a.files), read_all(&b.files), "{}", cmd.name());
    }
}

#[test]
fn outputs_carry_the_config_hash() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), FAST);
    let out = run(Subcommand::StrainScan, &cfg, tmp.path(), None).unwrap();
    let names: Vec<_> = out.files.iter().map(|f| f.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["strain_scan_e1.csv", "strain_scan_e2.csv"]);
    let text = fs::read_to_string(&out.files[0]).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# nvlevels strain-scan"));
    let hash = lines.next().unwrap().strip_prefix("# config_sha256: ").unwrap();
    assert_eq!(hash.len(), 64);
    let config_line = lines.next().unwrap().strip_prefix("# config: ").unwrap();
    let echoed: RunConfig = serde_json::from_str(config_line).unwrap();
    assert_eq!(echoed, RunConfig::from_json(FAST).unwrap());
    let header = lines.next().unwrap();
    assert!(header.starts_with("delta_e1_ghz,"));
    assert_eq!(lines.count(), 11);
}

#[test]
fn seed_override_changes_hash_and_values() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), FAST);
    let a = run(Subcommand::SpinSpin, &cfg, &tmp.path().join("a"), None).unwrap();
    let b = run(Subcommand::SpinSpin, &cfg, &tmp.path().join("b"), Some(99)).unwrap();
    let (ta, tb) = (fs::read_to_string(&a.files[0]).unwrap(), fs::read_to_string(&b.files[0]).unwrap());
    let hash = |t: &str| t.lines().nth(1).unwrap().to_owned();
    assert_ne!(hash(&ta), hash(&tb));
    assert_ne!(ta.lines().nth(4), tb.lines().nth(4));
}

#[test]
fn invalid_configs_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    for bad in [
        "not json",
        r#"{"unknown": 1}"#,
        r#"{"orbitals": {"bond_length_angstrom": -1}}"#,
        r#"{"quadrature": {"samples": 0}}"#,
        r#"{"stark_scan": {"direction": [0, 0, 0]}}"#,
        r#"{"strain_scan": {"ground": "A1"}}"#,
    ] {
        let cfg = config(tmp.path(), bad);
        assert!(run(Subcommand::Levels, &cfg, &out, None).is_err(), "{bad}");
    }
    assert!(run(Subcommand::Levels, &tmp.path().join("missing.json"), &out, None).is_err());
}

#[test]
fn stark_fit_reports_the_axial_slope() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(
        tmp.path(),
        r#"{"fine_structure": {"lambda_z_ghz": 0, "lambda_xy_ghz": 0, "delta_ghz": 0, "delta_prime_ghz": 0, "delta_double_prime_ghz": 0}}"#,
    );
    let out = run(Subcommand::StarkScan, &cfg, tmp.path(), None).unwrap();
    let fit = out.files.iter().find(|f| f.ends_with("stark_fit.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(fit).unwrap()).unwrap();
    let slope = v["data"]["fitted_relative_slope_ghz_per_mv_m"].as_f64().unwrap();
    let want = PiezoParams::default().axial_relative_slope();
    assert!((slope - want).abs() < 1e-6, "{slope} vs {want}");
    assert_eq!(v["subcommand"], "stark-scan");
}

#[test]
fn levels_lists_fifteen_states() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#"{"exchange_ghz": 100000}"#);
    let out = run(Subcommand::Levels, &cfg, tmp.path(), None).unwrap();
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out.files[0]).unwrap()).unwrap();
    let levels = v["data"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 15);
    assert_eq!(v["data"]["exchange"]["source"], "config");
    let names: Vec<_> = levels.iter().map(|l| l["name"].as_str().unwrap()).collect();
    for n in ["3A2-", "3A20", "3A2+", "A1", "A2", "Ex", "Ey", "E1", "E2", "1A1(a2)"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn binary_runs_and_reports_errors() {
    let bin = env!("CARGO_BIN_EXE_nvlevels");
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#"{"exchange_ghz": 100000}"#);
    let out = tmp.path().join("out");
    let status = Command::new(bin)
        .args(["levels", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(["--seed", "7"])
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(out.join("levels.json").exists());

    let missing = Command::new(bin)
        .args(["levels", "--config"])
        .arg(tmp.path().join("nope.json"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("error"));

    let unknown = Command::new(bin).arg("frobnicate").output().unwrap();
    assert!(!unknown.status.success());
}
