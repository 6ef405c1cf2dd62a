//! Runs the binary and compares stdout against `tests/golden/*.json`.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn crdsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crdsa"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("CRDSA_MAX_CARRIER")
        .output()
        .expect("binary runs")
}

fn zero_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "wall_time_ms" {
                    *x = Value::from(0);
                } else {
                    zero_timings(x);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(zero_timings),
        _ => {}
    }
}

fn normalize(stdout: &[u8]) -> String {
    let mut v: Value = serde_json::from_slice(stdout).expect("stdout is JSON");
    zero_timings(&mut v);
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = crdsa(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let got = normalize(&out.stdout);
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &got).unwrap();
        return;
    }
    let want = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(got, want, "{name} differs from its golden file");
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn alg_subalgebras() {
    golden(
        "alg_subalgebras_crdsa_only_n3",
        &["alg", "subalgebras", "--power", "3", "--crdsa-only"],
        0,
    );
    golden(
        "alg_subalgebras_c3pow2",
        &["alg", "subalgebras", "--fixture", "c3pow:2"],
        0,
    );
    golden(
        "alg_subalgebras_z3",
        &["alg", "subalgebras", "--fixture", "z3"],
        0,
    );
}

#[test]
fn alg_primal() {
    golden("alg_primal_c3", &["alg", "primal", "--fixture", "c3"], 0);
    golden("alg_primal_z3", &["alg", "primal", "--fixture", "z3"], 0);
    golden(
        "alg_primal_c3pow2",
        &["alg", "primal", "--fixture", "c3pow:2"],
        1,
    );
    let out = crdsa(&["alg", "primal", "--fixture", "c3pow:2"]);
    assert!(stderr(&out).contains("condition (1) fails"));
}

#[test]
fn alg_primal_from_file() {
    let malcev = crdsa_core::c3_malcev_term().to_string();
    golden(
        "alg_primal_c3_without_k",
        &[
            "alg",
            "primal",
            "--algebra",
            "inputs/c3_without_k.json",
            "--malcev",
            &malcev,
        ],
        1,
    );
    let out = crdsa(&["alg", "primal", "--algebra", "inputs/c3_without_k.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alg_validate_center_show() {
    golden(
        "alg_validate_c3pow2",
        &["alg", "validate", "--fixture", "c3pow:2"],
        0,
    );
    golden(
        "alg_center_c3pow2",
        &["alg", "center", "--fixture", "c3pow:2"],
        0,
    );
    golden("alg_show_c3", &["alg", "show", "--fixture", "c3"], 0);
    golden(
        "alg_validate_c2pow2",
        &["alg", "validate", "--fixture", "c2pow:2"],
        1,
    );
}

#[test]
fn embed() {
    golden(
        "embed_diagonal",
        &["embed", "--power", "2", "--center", "00,11"],
        0,
    );
    golden(
        "embed_full",
        &[
            "embed", "--power", "2", "--center", "00", "--center", "01", "--center", "10,11",
        ],
        0,
    );
    golden(
        "embed_missing_bound",
        &["embed", "--power", "2", "--center", "00,10"],
        1,
    );
    let out = crdsa(&["embed", "--power", "2", "--center", "0S,11"]);
    assert_eq!(out.status.code(), Some(1));
    let out = crdsa(&["embed", "--power", "2", "--center", "0x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum() {
    golden("spectrum_c3", &["spectrum", "--fixture", "c3"], 0);
    golden(
        "spectrum_c3pow2_details",
        &["spectrum", "--power", "2", "--details"],
        0,
    );
    let saved = fs::read_to_string(golden_dir().join("inputs/c3_space.json")).unwrap();
    assert_eq!(
        String::from_utf8(crdsa(&["spectrum", "--fixture", "c3"]).stdout).unwrap(),
        saved
    );
    let out = crdsa(&["spectrum", "--fixture", "z3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_base() {
    golden(
        "check_base_c3",
        &["check-base", "--space", "inputs/c3_space.json"],
        0,
    );
    golden(
        "check_base_c3pow2",
        &["check-base", "--space", "inputs/c3pow2_space.json"],
        0,
    );
    golden(
        "check_base_chain2",
        &["check-base", "--space", "inputs/chain2_space.json"],
        1,
    );
    let out = crdsa(&["check-base", "--space", "inputs/missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_map() {
    let c3 = "inputs/c3_space.json";
    golden(
        "check_map_identity",
        &[
            "check-map",
            "--space-x",
            c3,
            "--space-y",
            c3,
            "--map",
            "inputs/identity_map.json",
        ],
        0,
    );
    golden(
        "check_map_constant",
        &[
            "check-map",
            "--space-x",
            c3,
            "--space-y",
            c3,
            "--map",
            "inputs/constant_map.json",
        ],
        1,
    );
    let out = crdsa(&[
        "check-map",
        "--space-x",
        c3,
        "--space-y",
        c3,
        "--map",
        "inputs/constant_map.json",
    ]);
    assert!(stderr(&out).contains("Bd_2"), "{}", stderr(&out));
    // a two-point map into a four-point space: not total on X of size 4
    let out = crdsa(&[
        "check-map",
        "--space-x",
        "inputs/c3pow2_space.json",
        "--space-y",
        c3,
        "--map",
        "inputs/identity_map.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify() {
    golden("verify_max_n_1", &["verify", "--max-n", "1"], 0);
    let out = crdsa(&["verify", "--max-n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = crdsa(&[
        "verify",
        "--max-n",
        "1",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_full_suite_writes_report() {
    let path = std::env::temp_dir().join(format!("crdsa-report-{}.json", std::process::id()));
    let out = crdsa(&["verify", "--max-n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    fs::remove_file(&path).ok();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 30, "{} checks", checks.len());
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
    assert_eq!(report["failed"], 0);
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &[],
        &["alg"],
        &["alg", "show"],
        &["alg", "show", "--fixture", "c9"],
    ] {
        let out = crdsa(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    for sub in [
        "alg",
        "embed",
        "spectrum",
        "check-base",
        "check-map",
        "verify",
    ] {
        let out = crdsa(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub} --help");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
    }
}

#[test]
fn carrier_cap_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_crdsa"))
        .args(["alg", "subalgebras", "--fixture", "c3pow:2"])
        .env("CRDSA_MAX_CARRIER", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    let out = Command::new(env!("CARGO_BIN_EXE_crdsa"))
        .args(["alg", "subalgebras", "--fixture", "c3"])
        .env("CRDSA_MAX_CARRIER", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_matches_stdout() {
    let path = std::env::temp_dir().join(format!("crdsa-out-{}.json", std::process::id()));
    let out = crdsa(&[
        "alg",
        "center",
        "--fixture",
        "c3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = fs::read(&path).unwrap();
    fs::remove_file(&path).ok();
    assert_eq!(written, crdsa(&["alg", "center", "--fixture", "c3"]).stdout);
}
