//! Acceptance suite: every criterion at full size, with a wall-clock budget.
//! Each test prints a single `[PASS]`/`[FAIL]` line (visible with `--nocapture`).

use std::process::Command;
use std::time::{Duration, Instant};

use motivic_forest::suite::{criterion, SuiteConfig};

fn run_criterion(id: usize, budget_secs: u64) {
    let cfg = SuiteConfig { seed: 7, max_n: 5 };
    let start = Instant::now();
    let r = criterion(id, &cfg).expect("known criterion");
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_secs);
    let status = if r.pass() && in_time { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id}: {} ({} checks, limit {budget_secs}s)", r.name, r.checked);
    for n in &r.notes {
        println!("    note: {n}");
    }
    assert!(r.pass(), "criterion {id} failed: {:?}", r.failures);
    assert!(in_time, "criterion {id} took {elapsed:?}, over {budget_secs}s");
}

#[test]
fn criterion_01_d_squared() {
    run_criterion(1, 30);
}

#[test]
fn criterion_02_tree_differential_formula() {
    run_criterion(2, 120);
}

#[test]
fn criterion_03_bar_element_closed() {
    run_criterion(3, 180);
}

#[test]
fn criterion_04_shuffle_composition_antipode() {
    run_criterion(4, 300);
}

#[test]
fn criterion_05_coproduct() {
    run_criterion(5, 120);
}

#[test]
fn criterion_06_rho_is_a_dga_map() {
    run_criterion(6, 180);
}

#[test]
fn criterion_07_explicit_cycles_and_lifts() {
    run_criterion(7, 60);
}

#[test]
fn criterion_08_path_torsor() {
    run_criterion(8, 120);
}

#[test]
fn criterion_09_numerics() {
    run_criterion(9, 60);
}

#[test]
fn criterion_10_deterministic_report() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_motivic-forest"))
            .args(["verify", "all", "--max-n", "4", "--seed", "7", "--json"])
            .env_remove("MOTIVIC_FOREST_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).expect("JSON report");
    let status = if same && a.status.success() { "PASS" } else { "FAIL" };
    println!("[{status}] criterion 10: byte-identical reports from `verify all --max-n 4 --seed 7`");
    assert_eq!(report["schema"], "motivic-forest/1");
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert!(same, "reports differ");
}
