//! End-to-end checks of the command-line binary: output shapes, exit
//! codes, determinism, and the enumeration cap variable.

use std::process::{Command, Output};

fn sgforge(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sgforge"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn enumerate_prints_one_json_line_per_class() {
    let out = sgforge(&["enumerate", "--order", "2", "--mode", "equiv"], &[]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["order"], 2);
        assert!(v["canonical_key"].as_str().unwrap().len() == 8);
    }
}

#[test]
fn enumerate_is_byte_deterministic() {
    let first = sgforge(&["enumerate", "--order", "3", "--jobs", "1"], &[]);
    let second = sgforge(&["enumerate", "--order", "3", "--jobs", "4"], &[]);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn max_order_env_caps_enumeration() {
    let out = sgforge(
        &["enumerate", "--order", "4"],
        &[("SGFORGE_MAX_ORDER", "3")],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = sgforge(
        &["enumerate", "--order", "3"],
        &[("SGFORGE_MAX_ORDER", "3")],
    );
    assert!(out.status.success());
}

#[test]
fn build_o2_prints_the_l3_table() {
    let out = sgforge(&["build", "--name", "O", "--k", "2", "--print-table"], &[]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "0 0 0\n0 0 0\n0 1 2\n");
}

#[test]
fn check_violation_prints_witness_and_exits_1() {
    let out = sgforge(
        &[
            "check",
            "--name",
            "B2",
            "--pseudoidentity",
            "((xy)^w (yx)^w (xy)^w)^w = (xy)^w",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["satisfied"], false);
    assert!(v["witness"]["assignment"].is_object());
}

#[test]
fn report_writes_csv_and_summary() {
    let dir = std::env::temp_dir().join("sgforge-e2e-report");
    let _ = std::fs::remove_dir_all(&dir);
    let out = sgforge(
        &[
            "report",
            "--max-order",
            "3",
            "--out-dir",
            dir.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("classification.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4 + 18);
    assert!(csv.starts_with("order,canonical_key,verdict,target,condition_id,dual_applied"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["orders"][1]["ji"], 8);
    assert_eq!(summary["orders"][1]["non_ji"], 10);
}

#[test]
fn verify_catalog_exits_zero() {
    let out = sgforge(&["verify-catalog"], &[]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn augment_and_rlm_emit_semigroup_json() {
    let out = sgforge(&["augment", "--semigroup", "Z2", "--mode", "bar"], &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 4);
    let out = sgforge(&["rlm", "--semigroup", "Z2bar"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 4);
}

#[test]
fn local_checks_have_their_own_flag() {
    let out = sgforge(
        &["check", "--name", "l3", "--pseudoidentity", "x^(w+1) = x", "--local"],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["in_local"], true);
    let out = sgforge(
        &["check", "--name", "N2I", "--pseudoidentity", "x^(w+1) = x", "--local"],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn action_emits_transformation_semigroup_json() {
    let out = sgforge(&["action", "--semigroup", "N2"], &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["maps"].as_array().unwrap().len(), 2);
    let out = sgforge(&["action", "--semigroup", "l3", "--faithful"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["maps"].as_array().unwrap().len(), 3);
}

#[test]
fn hierarchy_reports_levels_and_separators() {
    let out = sgforge(
        &[
            "hierarchy",
            "--semigroup",
            "Sl2",
            "--pattern",
            "bar,flat",
            "--depth",
            "2",
            "--separate",
        ],
        &[],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let levels: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[0]["order"], 2);
    assert!(levels[0]["separator_from_next"].is_string());
}
