//! Basic command-line behavior: listing, running, dumping, exit codes.

use std::process::Command;

fn fibsim(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fibsim"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn list_names_every_experiment() {
    let out = fibsim(&["list"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    for name in [
        "ground-state:single-edge",
        "ground-state:theta",
        "ground-state:tetrahedron",
        "ground-state:tailed-theta",
        "theta-fusion",
        "tetra-fusion",
        "tailed-fusion",
        "braiding",
        "twist",
    ] {
        assert!(stdout.contains(name), "missing {name} in:\n{stdout}");
    }
}

#[test]
fn run_text_report() {
    let out = fibsim(&["run", "--experiment", "twist", "--shots", "100", "--seed", "7"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("twist"));
    assert!(stdout.contains("PASS"));
}

#[test]
fn run_json_report_parses() {
    let out = fibsim(&[
        "run",
        "--experiment",
        "braiding",
        "--shots",
        "200",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["experiment"], "braiding");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "relative_phase"));
    let counts = v["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|n| n.as_u64().unwrap()).sum();
    assert_eq!(total, 200);
}

#[test]
fn dump_lattice_json() {
    let out = fibsim(&["dump-lattice", "--lattice", "tetrahedron", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lattice"], "tetrahedron");
    assert_eq!(v["qubits"], 6);
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["plaquettes"].as_array().unwrap().len(), 4);
}

#[test]
fn dump_circuit_covers_all_experiments() {
    for name in ["theta-fusion", "twist"] {
        let out = fibsim(&["dump-circuit", "--experiment", name]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["experiment"], name);
        assert!(!v["ops"].as_array().unwrap().is_empty());
        assert!(!v["expected_stages"].as_array().unwrap().is_empty());
    }
}

#[test]
fn seed_env_var_overrides_flag() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_fibsim"))
        .args(["run", "--experiment", "theta-fusion", "--shots", "1000", "--seed", "1", "--format", "json"])
        .env("FIBSIM_SEED", "2")
        .output()
        .unwrap();
    let with_flag = fibsim(&[
        "run", "--experiment", "theta-fusion", "--shots", "1000", "--seed", "2", "--format", "json",
    ]);
    assert!(with_env.status.success() && with_flag.status.success());
    assert_eq!(with_env.stdout, with_flag.stdout);
}

#[test]
fn error_exit_codes() {
    // Unknown experiment: runtime error, exit 1.
    let out = fibsim(&["run", "--experiment", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown experiment"));
    // Unknown lattice: runtime error, exit 1.
    let out = fibsim(&["dump-lattice", "--lattice", "cube"]);
    assert_eq!(out.status.code(), Some(1));
    // Malformed usage: clap error, exit 2.
    let out = fibsim(&["run", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}
