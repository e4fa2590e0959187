//! End-to-end tests for the binary: run it on the fixture files and pin
//! down stdout, stderr, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], files: &[&str]) -> Output {
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cotor"));
    for f in files {
        full.push(fixture(f).display().to_string());
    }
    cmd.args(&full).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn homology_reports_each_degree() {
    let out = run_on(&["homology"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ring Z/4"), "{text}");
    assert!(text.contains("H_0 = Z/2"), "{text}");
}

#[test]
fn exactness_sets_the_exit_code() {
    let out = run_on(&["exact"], &["disk_z4.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("exact"));

    let out = run_on(&["exact"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not exact: H_0 = Z/2"));
}

#[test]
fn module_ext_matches_the_desk_examples() {
    // Ext^1 over Z/4 of Z/2 by Z/2 is Z/2; by the free module it vanishes.
    let out = run_on(&["ext", "mod"], &["mod_z2.json", "mod_z2.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Ext^1 = Z/2"));

    let out = run_on(&["ext", "mod"], &["mod_z2.json", "mod_z4.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Ext^1 = 0"));
}

#[test]
fn complex_level_ext_commands_run() {
    let out = run_on(&["ext", "ch"], &["disk_z4.json", "sphere_z2.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("complex Ext^1 = 0"));

    let out = run_on(&["ext", "dw"], &["sphere_z2.json", "sphere_z2.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("degreewise-split Ext^1 = 0"));
}

#[test]
fn membership_failures_name_the_degree() {
    let out = run_on(
        &["member", "--class", "rel", "--degrees", "projective"],
        &["sphere_z2.json"],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("degree 0"), "{}", stdout(&out));

    let out = run_on(
        &["member", "--class", "rel", "--degrees", "projective"],
        &["disk_z4.json"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("member"));
}

#[test]
fn orthogonality_reports_a_witness_generator() {
    let out = run_on(&["perp"], &["disk_z4.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("orthogonal"));

    let out = run_on(&["perp"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("generator #"), "{}", stdout(&out));
}

#[test]
fn approximation_prints_rows_and_claims() {
    let out = run_on(&["approx", "--direction", "cover"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("final row"), "{text}");
    assert!(text.contains("pipeline claims"), "{text}");
    assert!(text.contains("[ok  ] final middle is exact"), "{text}");
}

#[test]
fn filtration_certifies_a_complete_run() {
    let out = run_on(&["filtration"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("status: complete"), "{text}");
    assert!(text.contains("certificate: valid"), "{text}");
    assert!(text.contains("filtration layers"), "{text}");
}

#[test]
fn json_output_parses_and_carries_the_verdict() {
    let out = run_on(&["homology", "--json"], &["sphere_z2.json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["ring"], "Z/4");
    assert_eq!(v["homology"][0]["group"]["name"], "Z/2");

    let out = run_on(&["perp", "--json"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["orthogonal"], false);
    assert!(v["witness"].is_number());

    let out = run_on(&["filtration", "--json"], &["sphere_z2.json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["status"], "complete");
    assert_eq!(v["certified"], true);
}

#[test]
fn invalid_input_exits_two() {
    let out = run_on(&["homology"], &["broken.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("degree 0"), "{}", stderr(&out));

    let out = run(&["exact", "/no/such/file.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ring_mismatch_exits_three() {
    let out = run_on(&["exact", "--ring", "Z"], &["disk_z4.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("ring mismatch"));

    // Accepts the Zmod spelling as well.
    let out = run_on(&["exact", "--ring", "Zmod:4"], &["disk_z4.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = run_on(&["ext", "ch"], &["disk_z4.json", "sphere_z.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn usage_errors_exit_four() {
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 4);

    let out = run_on(&["perp", "--window", "3:1"], &["disk_z4.json"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("lo must not exceed hi"));

    let out = run_on(&["exact", "--ring", "Q"], &["disk_z4.json"]);
    assert_eq!(code(&out), 4);

    let out = run(&["verify", "bogus"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn verify_renders_scoreboard_lines_with_the_seed() {
    let out = run(&["verify", "snf", "--trials", "10", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("seed 7"), "{text}");
    assert!(text.contains("snf"), "{text}");
    assert!(text.contains("PASS"), "{text}");

    let out = run(&["verify", "snf", "corpus", "--trials", "20", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("homology"));
}
