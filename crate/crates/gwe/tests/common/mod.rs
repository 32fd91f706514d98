//! Shared helpers for the end-to-end and acceptance suites: spawning the
//! binary and the fixed golden input matrix.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn run_gwe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwe"))
        .args(args)
        .output()
        .expect("gwe binary runs")
}

/// Fixed input matrix for the golden-file tests: every subcommand appears,
/// JSON output, deterministic values only.
pub const GOLDEN_MATRIX: &[(&str, &[&str])] = &[
    (
        "energy_k1.json",
        &[
            "energy", "--k", "1", "--lambda", "1/2", "--area", "1", "--format", "json",
        ],
    ),
    (
        "energy_k2.json",
        &[
            "energy", "--k", "2", "--lambda", "1/2", "--area", "1", "--format", "json",
        ],
    ),
    (
        "jacobi_poly_k1.json",
        &["jacobi-poly", "--k", "1", "--check", "--format", "json"],
    ),
    (
        "jacobi_poly_k3.json",
        &["jacobi-poly", "--k", "3", "--check", "--format", "json"],
    ),
    (
        "sphere_k1_m1.json",
        &[
            "sphere", "--k", "1", "--m", "1", "--jmax", "3", "--format", "json",
        ],
    ),
    (
        "sphere_k2_m3.json",
        &[
            "sphere", "--k", "2", "--m", "3", "--jmax", "1", "--format", "json",
        ],
    ),
    (
        "clifford_1_1.json",
        &[
            "clifford", "--d1", "1", "--d2", "1", "--cutoff", "4", "--format", "json",
        ],
    ),
    (
        "clifford_2_2.json",
        &[
            "clifford", "--d1", "2", "--d2", "2", "--cutoff", "8", "--format", "json",
        ],
    ),
    (
        "clifford_3_3.json",
        &["clifford", "--d1", "3", "--d2", "3", "--format", "json"],
    ),
    (
        "verify_numeric_k1.json",
        &[
            "verify-numeric",
            "--k",
            "1",
            "--lambda",
            "0.5",
            "--eps0",
            "0.5",
            "--points",
            "24",
            "--tol",
            "1e-8",
            "--format",
            "json",
        ],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Runs one golden matrix entry and compares stdout byte for byte.
/// Set `GWE_REGEN_GOLDEN=1` to rewrite the files instead.
pub fn check_golden(name: &str, args: &[&str]) {
    let output = run_gwe(args);
    assert!(
        output.status.success(),
        "{name}: command failed\nstderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let path = golden_path(name);
    if std::env::var_os("GWE_REGEN_GOLDEN").is_some() {
        std::fs::write(&path, &output.stdout).expect("write golden");
        return;
    }
    let expected = std::fs::read(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(
        output.stdout,
        expected,
        "{name}: output diverged from golden file\ngot:\n{}",
        String::from_utf8_lossy(&output.stdout)
    );
}
