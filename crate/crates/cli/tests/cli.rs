use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sepfid_cli::{emit_state, parse_state, State};
use sepfid_core::random::{random_density, random_pure_state, stream_rng};
use sepfid_core::SubsystemSignature;
use serde_json::Value;
use tempfile::TempDir;

fn sepfid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepfid")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a report document")
}

fn field(doc: &Value, key: &str) -> f64 {
    doc[key].as_f64().unwrap_or_else(|| panic!("missing {key}"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const BELL: &str =
    r#"{"kind":"pure","dims":[2,2],"data":[[0.7071067812,0],[0,0],[0,0],[0.7071067812,0]]}"#;

fn werner_half() -> String {
    // 0.5 |Ψ⁻⟩⟨Ψ⁻| + 0.5 I/4
    let rows = [
        [0.125, 0.0, 0.0, 0.0],
        [0.0, 0.375, -0.25, 0.0],
        [0.0, -0.25, 0.375, 0.0],
        [0.0, 0.0, 0.0, 0.125],
    ];
    let data: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| format!("[{x},0]")).collect::<Vec<_>>().join(",")))
        .collect();
    format!(r#"{{"kind":"mixed","dims":[2,2],"data":[{}]}}"#, data.join(","))
}

#[test]
fn bell_pure_report() {
    let dir = TempDir::new().unwrap();
    let bell = write(&dir, "bell.state", BELL);
    let out = sepfid(&["pure", "--in", s(&bell)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    assert!((field(&doc, "f_sep") - 0.5).abs() <= 1e-9);
    assert!((field(&doc, "e_ge") - 0.5).abs() <= 1e-9);
    assert_eq!(doc["fidelity_convention"], "squared");
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["tool"], "sepfid");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["diagnostics"]["converged"], true);
}

#[test]
fn werner_concurrence() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "werner05.state", &werner_half());
    let out = sepfid(&["twoqubit", "--in", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    assert!((field(&doc, "concurrence") - 0.25).abs() <= 1e-9);
    let f = (1.0 + (1.0f64 - 0.0625).sqrt()) / 2.0;
    assert!((field(&doc, "f_sep") - f).abs() <= 1e-12);
}

#[test]
fn fidelity_command_reports_all_routes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "bell.state", BELL);
    let b = write(&dir, "werner.state", &werner_half());
    let out = sepfid(&["fidelity", "--in", s(&a), "--with", s(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    // ⟨Φ⁺|ρ_W|Φ⁺⟩ = (ρ₀₀ + ρ₃₃)/2
    for key in ["fidelity", "uhlmann_fidelity", "fidelity_pure"] {
        assert!((field(&doc, key) - 0.125).abs() <= 1e-6, "{key}");
    }
}

#[test]
fn value_format_prints_headline() {
    let dir = TempDir::new().unwrap();
    let bell = write(&dir, "bell.state", BELL);
    let out = sepfid(&["pure", "--in", s(&bell), "--format", "value"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!((text.trim().parse::<f64>().unwrap() - 0.5).abs() <= 1e-9);
}

#[test]
fn cut_regroups_parties() {
    let dir = TempDir::new().unwrap();
    let w = write(
        &dir,
        "w3.state",
        r#"{"kind":"pure","dims":[2,2,2],"data":[[0,0],[1,0],[1,0],[0,0],[1,0],[0,0],[0,0],[0,0]]}"#
            .replace("[1,0]", "[0.5773502691896258,0]")
            .as_str(),
    );
    let out = sepfid(&["pure", "--in", s(&w), "--cut", "0|1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    assert!((field(&doc, "f_sep") - 2.0 / 3.0).abs() <= 1e-9);
    assert_eq!(doc["dims"], serde_json::json!([2, 4]));

    let bad = sepfid(&["pure", "--in", s(&w), "--cut", "0|1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let text = emit_state(&State::Mixed(random_density(
        &mut stream_rng(9, 0),
        &SubsystemSignature::new(vec![2, 2, 2]).unwrap(),
        2,
    )));
    let path = write(&dir, "rho.state", &text);
    let args = ["mixed", "--in", s(&path), "--seed", "7", "--restarts", "4"];
    let a = sepfid(&args);
    let b = sepfid(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let short = write(&dir, "short.state", r#"{"kind":"pure","dims":[2],"data":[[0.9,0],[0,0]]}"#);
    let out = sepfid(&["pure", "--in", s(&short)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("norm"));

    assert_eq!(sepfid(&["pure", "--in", "/nonexistent/state"]).status.code(), Some(1));
    assert_eq!(sepfid(&["pure"]).status.code(), Some(1));
    assert_eq!(sepfid(&["--help"]).status.code(), Some(0));

    let w = write(
        &dir,
        "w.state",
        r#"{"kind":"pure","dims":[2,2,2],"data":[[0,0],[0.5773502691896258,0],[0.5773502691896258,0],[0,0],[0.5773502691896258,0],[0,0],[0,0],[0,0]]}"#,
    );
    let stalled = sepfid(&["pure", "--in", s(&w), "--tol", "0"]);
    assert_eq!(stalled.status.code(), Some(2));
    assert_eq!(report(&stalled)["diagnostics"]["converged"], false);
    assert_eq!(sepfid(&["pure", "--in", s(&w), "--tol=-1"]).status.code(), Some(1));
}

#[test]
fn help_states_convention() {
    let out = sepfid(&["--help"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("SQUARED"));
}

#[test]
fn quick_verify_passes() {
    let out = sepfid(&["verify", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = report(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 9);
}

#[test]
fn emit_parse_round_trip() {
    let mut rng = stream_rng(11, 0);
    for dims in [vec![2], vec![3, 2], vec![2, 2, 2]] {
        let sig = SubsystemSignature::new(dims).unwrap();
        let psi = random_pure_state(&mut rng, &sig);
        let State::Pure(back) = parse_state(&emit_state(&State::Pure(psi.clone()))).unwrap() else {
            panic!("kind changed")
        };
        assert!((back.amplitudes() - psi.amplitudes()).camax() <= 1e-12);

        let rho = random_density(&mut rng, &sig, 2);
        let State::Mixed(back) = parse_state(&emit_state(&State::Mixed(rho.clone()))).unwrap() else {
            panic!("kind changed")
        };
        assert!((back.matrix() - rho.matrix()).camax() <= 1e-12);
    }
}
