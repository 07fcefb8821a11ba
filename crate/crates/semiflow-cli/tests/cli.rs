//! End-to-end CLI tests, including the determinism acceptance criterion:
//! two full fixture runs with the same seed must produce byte-identical
//! JSON reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_semiflow"));
    cmd.args(args);
    cmd.env_remove("SEMIFLOW_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn minimal_config_parses_and_passes() {
    let cfg = fixture("minimal.toml");
    let out = run(&["--config", cfg.to_str().unwrap(), "--format", "json"], &[]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["version"], "1");
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["suite"], "semigroup-law");
    assert_eq!(reports[0]["pass"], true);
}

#[test]
fn unknown_suite_name_is_rejected_by_name() {
    let cfg = fixture("bad-suite.toml");
    let out = run(&["--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("no-such-suite"), "stderr: {stderr}");
}

#[test]
fn unknown_config_key_is_rejected() {
    let cfg = fixture("unknown-key.toml");
    let out = run(&["--config", cfg.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("frobnicate"), "stderr: {stderr}");
}

#[test]
fn full_fixture_runs_all_suites_in_declared_order() {
    let cfg = fixture("full.toml");
    let out = run(&["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "42"], &[]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        vec![
            "semigroup-law",
            "exp-bound",
            "wot-zero",
            "pettis",
            "commutation",
            "resolvent-agreement",
            "resolvent-equation",
            "difference-quotient",
            "closedness",
            "cp-unital",
            "gks-form",
            "omega-invariance",
        ]
    );
    for r in reports {
        assert_eq!(r["pass"], true, "suite {} failed: {r}", r["suite"]);
    }
}

#[test]
fn acceptance_11_determinism_bit_identical_json() {
    let cfg = fixture("full.toml");
    let args = ["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "42"];
    let first = run(&args, &[]);
    let second = run(&args, &[]);
    assert!(first.status.success());
    assert!(second.status.success());
    let pass = first.stdout == second.stdout;
    println!(
        "ACCEPTANCE 11 determinism: {} — two --seed 42 runs, {} bytes each",
        if pass { "PASS" } else { "FAIL" },
        first.stdout.len()
    );
    assert!(pass, "two identical-seed runs differ");

    // parallelism must not change results either
    let mut par_args = args.to_vec();
    par_args.extend(["--parallel", "4"]);
    let third = run(&par_args, &[]);
    assert!(third.status.success());
    assert_eq!(first.stdout, third.stdout, "parallel run differs from serial run");
}

#[test]
fn zero_tolerance_fails_one_suite_and_spares_siblings() {
    let cfg = fixture("two-suites.toml");
    let out = run(
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "json",
            "--override",
            "semigroup-law.tol=0",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1), "exit code should signal failure");
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports[0]["suite"], "semigroup-law");
    assert_eq!(reports[0]["pass"], false);
    assert_eq!(reports[1]["suite"], "cp-unital");
    assert_eq!(reports[1]["pass"], true, "sibling suite must be unaffected");
}

#[test]
fn seed_env_var_applies_when_flag_absent() {
    let cfg = fixture("minimal.toml");
    let with_env = run(
        &["--config", cfg.to_str().unwrap(), "--format", "json"],
        &[("SEMIFLOW_SEED", "7")],
    );
    let with_flag = run(&["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "7"], &[]);
    assert_eq!(with_env.stdout, with_flag.stdout);

    // flag wins over the environment
    let flag_wins = run(
        &["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "3"],
        &[("SEMIFLOW_SEED", "7")],
    );
    let plain_three =
        run(&["--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "3"], &[]);
    assert_eq!(flag_wins.stdout, plain_three.stdout);
}

#[test]
fn text_format_reports_wall_time_and_summary() {
    let cfg = fixture("minimal.toml");
    let out = run(&["--config", cfg.to_str().unwrap(), "--format", "text"], &[]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("[PASS] semigroup-law"), "text: {text}");
    assert!(text.contains("wall-time"), "text: {text}");
    assert!(text.contains("1/1 suites passed"), "text: {text}");
}

#[test]
fn out_flag_writes_file() {
    let cfg = fixture("minimal.toml");
    let dir = std::env::temp_dir().join(format!("semiflow-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("report.json");
    let out = run(
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "json",
            "--out",
            out_path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let body = std::fs::read_to_string(&out_path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["reports"][0]["pass"], true);
    std::fs::remove_dir_all(&dir).ok();
}
