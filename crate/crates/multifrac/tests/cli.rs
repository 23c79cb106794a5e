//! End-to-end checks of the binary: exit codes, the one-line stderr
//! contract, and artifact presence. Failure configs are written to a
//! tempdir so tests/data keeps only working examples.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_multifrac")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn")
}

fn stderr_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).trim_end().to_string()
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const CANTOR_BASE: &str = r#"{
  "ifs": {
    "branches": [
      {"type": "affine", "ratio": 0.3333333333333333, "offset": 0.0},
      {"type": "affine", "ratio": 0.3333333333333333, "offset": 0.6666666666666666}
    ],
    "hull": [0.0, 1.0]
  },
  "potential": {"type": "symbol_log_weights", "weights": [-0.6931471805599453, -0.6931471805599453]},
  "radius_schedule": {"r0": 0.5, "rho": 0.5, "count": 12, "window": 2}
}"#;

#[test]
fn validate_passes_on_the_examples() {
    for cfg in ["tests/data/binomial.json", "tests/data/conjugacy.json", "tests/data/moebius.json"] {
        let out = run(&["validate", "--config", cfg]);
        assert!(
            out.status.success(),
            "{cfg}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.contains("base system"), "{cfg}: {stdout}");
    }
}

#[test]
fn missing_config_is_an_io_failure() {
    let out = run(&["validate", "--config", "/nonexistent/scene.json"]);
    assert_eq!(out.status.code(), Some(1));
    let line = stderr_line(&out);
    assert!(line.starts_with("multifrac: kind=io code=1 msg=\""), "{line}");
    assert!(!line.contains('\n'));
}

#[test]
fn malformed_json_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "broken.json", "{\"ifs\": [not json");
    let out = run(&["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let line = stderr_line(&out);
    assert!(line.starts_with("multifrac: kind=validation code=2"), "{line}");
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let body = std::fs::read_to_string("tests/data/binomial.json")
        .unwrap()
        .replacen('{', "{\n  \"surprise\": 1,", 1);
    let cfg = write_cfg(dir.path(), "extra.json", &body);
    let out = run(&["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).contains("surprise"), "{}", stderr_line(&out));
}

#[test]
fn conjugacy_requires_a_target_system() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "conjugacy",
        "--config",
        "tests/data/binomial.json",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_line(&out).starts_with("multifrac: kind=validation code=2"));
}

#[test]
fn conjugacy_rejects_a_gappy_target() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
  "ifs": {
    "branches": [
      {"type": "affine", "ratio": 0.5, "offset": 0.0},
      {"type": "affine", "ratio": 0.5, "offset": 0.5}
    ],
    "hull": [0.0, 1.0]
  },
  "ifs_g": {
    "branches": [
      {"type": "affine", "ratio": 0.3333333333333333, "offset": 0.0},
      {"type": "affine", "ratio": 0.3333333333333333, "offset": 0.6666666666666666}
    ],
    "hull": [0.0, 1.0]
  }
}"#;
    let cfg = write_cfg(dir.path(), "gappy.json", body);
    let out = run(&["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("conjugacy pairing"), "{stdout}");
}

#[test]
fn gap_point_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "cantor.json", CANTOR_BASE);
    let out_dir = dir.path().join("out");
    let out = run(&[
        "hoelder",
        "--config",
        &cfg,
        "--out",
        out_dir.to_str().unwrap(),
        "--point",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr_line(&out));
    assert!(stderr_line(&out).starts_with("multifrac: kind=numerical code=3"));
}

#[test]
fn spectrum_writes_its_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "spectrum",
        "--config",
        "tests/data/binomial.json",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_line(&out));
    for name in ["pressure.csv", "spectrum.csv", "range.json"] {
        assert!(out_dir.join(name).is_file(), "missing {name}");
    }
    let range: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("range.json")).unwrap())
            .unwrap();
    for key in ["alpha_minus", "alpha_plus", "degenerate", "psi_pressure", "config_hash"] {
        assert!(range.get(key).is_some(), "range.json lacks {key}");
    }
    let pressure = std::fs::read_to_string(out_dir.join("pressure.csv")).unwrap();
    assert!(pressure.starts_with("beta,"), "unexpected header");
    assert!(pressure.contains("# config_hash:"));
}

#[test]
fn depth_override_is_refused_where_it_would_lie() {
    // The hoelder schedule picks its own depth per radius; a global
    // override would silently change the certification story.
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "hoelder",
        "--config",
        "tests/data/binomial.json",
        "--out",
        out_dir.to_str().unwrap(),
        "--depth-override",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_line(&out));
}
