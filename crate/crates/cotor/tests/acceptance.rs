//! The acceptance gate: eleven criteria, one suite each, fixed seeds and
//! case counts, and a wall-clock budget per criterion. Every test prints
//! its scoreboard line (visible with `--nocapture`) and fails loudly with
//! the suite's own failure report otherwise.
//!
//! The criteria serialize through a mutex so the budgets measure the suite
//! itself, not contention with the other ten.

use cotor::verify::{
    run_approx_forward, run_cogenerators, run_corpus, run_disk_iso, run_et, run_ext_oracle,
    run_homotopy, run_lifting, run_shift_iso, run_snf, run_sphere_iso, SuiteOutcome,
};
use std::sync::{Mutex, MutexGuard};

static GATE: Mutex<()> = Mutex::new(());

/// Take the serialization lock, shrugging off poison: a failed criterion
/// must not drag the others down with it.
fn gate() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

const SEED: u64 = 42;

fn report(number: u32, title: &str, out: &SuiteOutcome, budget_secs: f64) {
    let elapsed = out.elapsed.as_secs_f64();
    let verdict = if out.passed() && elapsed <= budget_secs {
        "PASS"
    } else {
        "FAIL"
    };
    eprintln!(
        "criterion {number:02} ({title}): {verdict} — {} cases in {elapsed:.1}s (budget {budget_secs:.0}s)",
        out.cases
    );
    assert!(out.passed(), "{}", out.render());
    assert!(
        elapsed <= budget_secs,
        "criterion {number} overran its budget: {elapsed:.1}s > {budget_secs:.0}s"
    );
}

#[test]
fn criterion_01_smith_normal_forms() {
    let _g = gate();
    let out = run_snf(500, SEED).unwrap();
    report(1, "smith normal forms", &out, 10.0);
}

#[test]
fn criterion_02_module_extensions_vs_oracle() {
    let _g = gate();
    let out = run_ext_oracle(SEED).unwrap();
    report(2, "module extensions vs factor-set oracle", &out, 60.0);
}

#[test]
fn criterion_03_shift_dictionary() {
    let _g = gate();
    let out = run_shift_iso(200, SEED, 2).unwrap();
    report(3, "shift dictionary", &out, 120.0);
}

#[test]
fn criterion_04_disk_adjunctions() {
    let _g = gate();
    let out = run_disk_iso(100, SEED, 2).unwrap();
    report(4, "disk adjunctions", &out, 60.0);
}

#[test]
fn criterion_05_sphere_adjunction() {
    let _g = gate();
    let out = run_sphere_iso(100, SEED, 2).unwrap();
    report(5, "sphere adjunction on exact sources", &out, 60.0);
}

#[test]
fn criterion_06_homotopy_orthogonality() {
    let _g = gate();
    let out = run_homotopy(100, 20, SEED, 2).unwrap();
    report(6, "homotopy orthogonality with corruption", &out, 120.0);
}

#[test]
fn criterion_07_class_corpus_identities() {
    let _g = gate();
    let out = run_corpus(500, SEED, 2).unwrap();
    report(7, "class corpus identities", &out, 30.0);
}

#[test]
fn criterion_08_cogenerating_family() {
    let _g = gate();
    let out = run_cogenerators(100, SEED, 2).unwrap();
    report(8, "cogenerating family biconditional", &out, 120.0);
}

#[test]
fn criterion_09_lifting_decides_exactness() {
    let _g = gate();
    let out = run_lifting(100, SEED, 2).unwrap();
    report(9, "lifting decides exactness", &out, 60.0);
}

#[test]
fn criterion_10_approximation_pipeline() {
    let _g = gate();
    let out = run_approx_forward(50, SEED, 2).unwrap();
    report(10, "approximation pipeline", &out, 180.0);
}

#[test]
fn criterion_11_extension_runs() {
    let _g = gate();
    let out = run_et(30, SEED, 2).unwrap();
    report(11, "certified extension runs", &out, 120.0);
}
