//! Exercises the binary end to end: payload shapes, exit codes, and
//! byte-reproducibility for fixed seeds.

use std::process::{Command, Output};

fn querylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_querylab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON object")
}

#[test]
fn bound_basic() {
    let out = querylab(&["bound", "--q", "1", "--k", "2", "--m", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["bound"].as_f64().unwrap(), 0.75);
}

#[test]
fn bound_one_over_seven() {
    let out = querylab(&["bound", "--q", "0", "--k", "1", "--m", "7"]);
    let v = stdout_json(&out);
    assert!((v["bound"].as_f64().unwrap() - 1.0 / 7.0).abs() < 1e-15);
}

#[test]
fn bound_simplified_identity() {
    let out = querylab(&["bound", "--q", "2", "--k", "3", "--m", "2", "--simplified"]);
    let v = stdout_json(&out);
    assert_eq!(v["bound"].as_f64().unwrap(), 0.875);
    assert_eq!(v["identity_check"], serde_json::json!(true));
}

#[test]
fn bound_simplified_needs_k_q_plus_one() {
    let out = querylab(&["bound", "--q", "1", "--k", "3", "--m", "2", "--simplified"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_is_exit_two() {
    let out = querylab(&["bound", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_zerosum_passes() {
    let out = querylab(&["verify", "zerosum", "--max-m", "32"]);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn verify_oracle_equivalence_passes() {
    let out = querylab(&[
        "verify",
        "oracle-equivalence",
        "--max-n",
        "4",
        "--max-m",
        "4",
        "--seed",
        "7",
        "--states",
        "10",
        "--funcs",
        "5",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], serde_json::json!(true));
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn verify_poly_passes() {
    let out = querylab(&[
        "verify", "poly", "--n", "3", "--m", "2", "--q", "2", "--seed", "1", "--circuits", "6",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn game_forge_classical_point() {
    let out = querylab(&[
        "game", "forge", "--n", "2", "--m", "2", "--q", "1", "--k", "2", "--adversary",
        "classical", "--mode", "exact",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["p"].as_f64().unwrap(), 0.5);
    assert_eq!(v["bound"].as_f64().unwrap(), 0.75);
}

#[test]
fn game_forge_guessing_point() {
    let out = querylab(&[
        "game", "forge", "--adversary", "guess", "--q", "0", "--k", "1", "--m", "8", "--n", "4",
        "--mode", "exact",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["p"].as_f64().unwrap(), 0.125);
}

#[test]
fn game_forge_mc_reproducible() {
    let args = [
        "game", "forge", "--n", "2", "--m", "2", "--q", "1", "--k", "2", "--adversary",
        "classical", "--mode", "mc", "--trials", "512", "--seed", "42",
    ];
    let a = querylab(&args);
    let b = querylab(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["trials"].as_u64().unwrap(), 512);
    assert!(v["std_error"].as_f64().is_some());
}

#[test]
fn game_sweep_csv_sorted() {
    let out = querylab(&[
        "game", "sweep", "--min-n", "2", "--max-n", "2", "--min-m", "2", "--max-m", "2",
        "--min-q", "0", "--max-q", "1", "--adversaries", "guess,classical",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "n,m,q,k,adversary,p,bound,ratio");
    assert!(lines.len() > 1);
    let mut keys = Vec::new();
    for row in &lines[1..] {
        let parts: Vec<&str> = row.split(',').collect();
        assert_eq!(parts.len(), 8);
        keys.push((
            parts[0].to_string(),
            parts[1].to_string(),
            parts[2].to_string(),
            parts[3].to_string(),
            parts[4].to_string(),
        ));
    }
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn game_ind_qcpa_identity_lost() {
    let out = querylab(&[
        "game", "ind-qcpa", "--scheme", "identity", "--adversary", "trial-decrypt", "--msg-space",
        "3", "--mode", "exact",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["p"].as_f64().unwrap(), 1.0);
}

#[test]
fn game_ind_scpa_pad_blind() {
    let out = querylab(&[
        "game", "ind-scpa", "--scheme", "pad", "--msg-space", "2", "--mode", "exact",
    ]);
    let v = stdout_json(&out);
    assert!((v["p"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
}

#[test]
fn optimize_forge_reproducible_and_bounded() {
    let args = [
        "optimize", "forge", "--n", "2", "--m", "2", "--q", "1", "--k", "2", "--iters", "50",
        "--restarts", "2", "--seed", "3",
    ];
    let a = querylab(&args);
    let b = querylab(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    let score = v["score"].as_f64().unwrap();
    assert!(score <= 0.75 + 1e-9);
    assert!(score >= 0.5 - 1e-12);
    assert!(v["params_digest"].as_str().unwrap().len() == 16);
}

#[test]
fn optimize_zero_iters_returns_baseline() {
    let out = querylab(&[
        "optimize", "forge", "--n", "2", "--m", "2", "--q", "1", "--k", "2", "--iters", "0",
        "--restarts", "1", "--seed", "0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["score"].as_f64().unwrap(), 0.5);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("querylab_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.json");
    let out = querylab(&[
        "--out",
        path.to_str().unwrap(),
        "bound",
        "--q",
        "0",
        "--k",
        "1",
        "--m",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["bound"].as_f64().unwrap(), 0.5);
}
