//! End-to-end checks of the command-line interface: exit codes, report
//! determinism, and the generate → write → verify round trip.

use std::fs;
use std::process::{Command, Output};

fn supdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supdiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_bundled_passes_with_exit_zero() {
    let out = supdiff(&["verify", "--bundled", "abs"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("EXACT_MATCH"));
}

#[test]
fn expected_mismatch_still_exits_zero() {
    let out = supdiff(&["verify", "--bundled", "non_lsc_pair"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn wrong_expectation_exits_one() {
    // Claim the nearby-point formula holds on the non-lsc pair; the run
    // must contradict the expectation and fail.
    let dir = tempfile::tempdir().unwrap();
    let bundled_dir = dir.path().join("bundled");
    let out = supdiff(&[
        "examples",
        "--out-dir",
        bundled_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let path = bundled_dir.join("non_lsc_pair.json");
    let text = fs::read_to_string(&path).unwrap();
    let lied = text.replace(
        "\"nearby_base\": \"mismatch\"",
        "\"nearby_base\": \"exact_match\"",
    );
    assert_ne!(text, lied);
    let lie_path = dir.path().join("lie.json");
    fs::write(&lie_path, lied).unwrap();
    let out = supdiff(&["verify", "--instance", lie_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
}

#[test]
fn parse_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{ not json").unwrap();
    let out = supdiff(&["verify", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = supdiff(&["verify", "--instance", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = [
        "verify",
        "--bundled",
        "sqrt_pair",
        "--report",
        "json",
        "--seed",
        "3",
    ];
    let a = supdiff(&args);
    let b = supdiff(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn single_formula_and_custom_grid() {
    let out = supdiff(&[
        "verify",
        "--bundled",
        "sqrt_pair",
        "--formula",
        "nearby_base",
        "--eps-grid",
        "1/4,1/16,1/64",
        "--tol",
        "1/256",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("nearby_base"));
    assert!(!text.contains("eps_active"));
}

#[test]
fn gen_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let out = supdiff(&[
        "gen",
        "--n",
        "2",
        "--k",
        "3",
        "--seed",
        "5",
        "--kind",
        "with_indicator",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let verify = supdiff(&["verify", "--instance", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
    // determinism of the generator itself
    let again = supdiff(&[
        "gen", "--n", "2", "--k", "3", "--seed", "5", "--kind", "with_indicator",
    ]);
    let direct = supdiff(&[
        "gen", "--n", "2", "--k", "3", "--seed", "5", "--kind", "with_indicator",
    ]);
    assert_eq!(stdout(&again), stdout(&direct));
}

#[test]
fn oracle_agrees_on_bundled_instances() {
    for name in ["abs", "corner2d", "non_lsc_pair_closed"] {
        let out = supdiff(&["oracle", "--bundled", name, "--directions", "25"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains("oracle: PASS"));
    }
}

#[test]
fn unknown_formula_is_a_usage_error() {
    let out = supdiff(&["verify", "--bundled", "abs", "--formula", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
}
