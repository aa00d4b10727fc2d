//! End-to-end tests of the `distill` binary: flags, config files, sweeps,
//! plots, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_distill")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("distill-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn fidelity_column(path: &Path) -> Vec<f64> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn custom_two_qubit_chain_stays_at_fidelity_one() {
    let dir = scratch("custom");
    let out = dir.join("n2.csv");
    let output = run(&[
        "run",
        "--scenario",
        "custom",
        "--n",
        "2",
        "--initial-state",
        "singlet_symmetrized",
        "--iterations",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let fidelities = fidelity_column(&out);
    assert_eq!(fidelities.len(), 5); // iteration 0 plus 4 rounds
    for f in fidelities {
        assert!((f - 1.0).abs() < 1e-10);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_scenario_and_unknown_suite_exit_with_usage_error() {
    let output = run(&["run", "--scenario", "fig9z", "--out", "/tmp/never.csv"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown scenario"));

    let output = run(&["validate", "--suite", "nonsense"]);
    assert_eq!(output.status.code(), Some(1));

    let output = run(&["run", "--scenario"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn fig2d_sweep_writes_one_csv_per_delta() {
    let dir = scratch("sweep");
    let out = dir.join("fig2d.csv");
    let output = run(&[
        "run",
        "--scenario",
        "fig2d",
        "--iterations",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    for label in ["-0.2", "-0.1", "0", "0.1", "0.2"] {
        let path = dir.join(format!("fig2d_delta_{label}.csv"));
        assert!(path.exists(), "missing {}", path.display());
    }
    assert!(!out.exists(), "sweep must not write the unlabeled path");

    // A fixed delta collapses the sweep and the flat output path returns.
    let single = dir.join("single.csv");
    let output = run(&[
        "run",
        "--scenario",
        "fig2d",
        "--delta",
        "0",
        "--iterations",
        "3",
        "--out",
        single.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let fidelities = fidelity_column(&single);
    for f in &fidelities {
        assert!(
            (f - fidelities[0]).abs() < 1e-10,
            "δ = 0 rows must be constant"
        );
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn plot_emission_produces_svg_with_both_series() {
    let dir = scratch("plot");
    let out = dir.join("fig2a.csv");
    let plot = dir.join("fig2a.svg");
    let output = run(&[
        "run",
        "--scenario",
        "fig2a",
        "--iterations",
        "4",
        "--out",
        out.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let svg = std::fs::read_to_string(&plot).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains("success probability ×10"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_file_applies_and_flags_win() {
    let dir = scratch("config");
    let config = dir.join("run.conf");
    std::fs::write(
        &config,
        "# scenario tuning\niterations = 3\nseed = 9 # trailing comment\nn = 2\n",
    )
    .unwrap();
    let out = dir.join("out.csv");
    let output = run(&[
        "run",
        "--scenario",
        "custom",
        "--config",
        config.to_str().unwrap(),
        "--iterations",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    // iterations came from the flag (5), n from the file (2).
    assert_eq!(fidelity_column(&out).len(), 6);

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "unknown_key = 3\n").unwrap();
    let output = run(&[
        "run",
        "--scenario",
        "custom",
        "--config",
        bad.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_algebra_suite_passes() {
    let output = run(&["validate", "--suite", "algebra"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("PASS algebra/")));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn engine_choice_flag_is_respected() {
    let dir = scratch("engine");
    let out = dir.join("full.csv");
    let output = run(&[
        "run",
        "--scenario",
        "fig2a",
        "--engine",
        "full",
        "--iterations",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",full"));

    // The truncated engine must refuse an out-of-sector initial state.
    let output = run(&[
        "run",
        "--scenario",
        "fig2c",
        "--engine",
        "truncated",
        "--out",
        dir.join("never.csv").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("spin"));
    std::fs::remove_dir_all(&dir).ok();
}
