use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic-forest"))
        .args(args)
        .env_remove("MOTIVIC_FOREST_SEED")
        .output()
        .expect("binary runs")
}

#[test]
fn shuffle_example_passes() {
    let out = run(&["verify", "shuffle", "--from", "0", "--left", "3", "--right", "5", "--to", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tree_enumeration_lists_catalan_many() {
    let out = run(&["trees", "enumerate", "--root", "0", "--leaves", "3,5,7", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "motivic-forest/1");
    assert_eq!(v["trees"].as_array().unwrap().len(), 2);
    let out = run(&["trees", "enumerate", "--root", "0", "--leaves", "1,2,3,4,5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 14);
}

#[test]
fn genericity_only_gates_when_asked() {
    assert_eq!(run(&["verify", "bar-closed", "--seq", "0;3,3;1"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "bar-closed", "--seq", "0;3,3;1", "--strict-generic"]).status.code(), Some(2));
    assert_eq!(run(&["cycle", "build", "--seq", "0;3,3;1"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["verify", "frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["num", "iterint", "--path", "0,1/2", "--poles", "1", "--tol", "abc"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    assert_eq!(run(&["cycle", "zeta-double", "--n", "2", "--m", "1"]).status.code(), Some(1));
    assert_eq!(run(&["num", "iterint", "--path", "0,1", "--poles", "1"]).status.code(), Some(1));
}

#[test]
fn seed_flag_overrides_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_motivic-forest"))
        .args(["verify", "antipode", "--max-n", "2", "--json", "--seed", "3"])
        .env("MOTIVIC_FOREST_SEED", "11")
        .output()
        .unwrap();
    let b = run(&["verify", "antipode", "--max-n", "2", "--json", "--seed", "3"]);
    let c = run(&["verify", "antipode", "--max-n", "2", "--json", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(b.stdout, c.stdout);
}

#[test]
fn dilogarithm_at_one_half() {
    let out = run(&["num", "iterint", "--path", "0,1/2", "--poles", "1,0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let re = v["value"]["re"].as_f64().unwrap();
    // Li₂(1/2) = π²/12 − (ln 2)²/2
    let li2 = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
    assert!((re + li2).abs() < 1e-10);
}
