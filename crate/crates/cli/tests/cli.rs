use std::process::{Command, Output};

use serde_json::Value;

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .env_remove("BRAUER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn body(v: &Value) -> Value {
    let mut v = v.clone();
    v.as_object_mut().unwrap().remove("meta");
    v
}

#[test]
fn r_table_cell() {
    let out = brauer(&["r-table", "--tau", "20", "--h", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["result"]["r"], serde_json::json!([1, 2, 5, 10]));
    assert_eq!(d["schema"], 1);
}

#[test]
fn full_r_table_has_55_cells() {
    let d = doc(&brauer(&["r-table"]));
    assert_eq!(d["result"]["cells"].as_array().unwrap().len(), 55);
}

#[test]
fn gamma_check_reports_both_sides() {
    let out = brauer(&["gamma-check", "--p", "5", "--N", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["result"]["holds"], true);
    assert_eq!(d["result"]["alpha"], d["result"]["gamma_value"]);
    assert_eq!(d["result"]["alpha"]["signed"], -106);
}

#[test]
fn diagonal_quartic_at_seven_is_supersingular() {
    let d = doc(&brauer(&["height", "--family", "diagonal-quartic", "--p", "7"]));
    assert_eq!(d["result"]["classification"]["class"], "supersingular_up_to");
    assert_eq!(d["result"]["classification"]["bound"], 3);
}

#[test]
fn unsupported_prime_is_a_usage_error() {
    let out = brauer(&["height-scan", "--family", "quasi-diagonal-sextic", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(doc(&out)["exit_code"], 2);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(brauer(&["height", "--p", "7"]).status.code(), Some(2));
    assert_eq!(brauer(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        brauer(&["r-table", "--tau", "20"]).status.code(),
        Some(2),
        "tau without h"
    );
}

#[test]
fn q49_rows_for_small_bound() {
    let d = doc(&brauer(&["q49-scan", "--p-max", "14", "--family", "quasi-diagonal-quartic"]));
    let ps: Vec<u64> = d["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["p"].as_u64().unwrap())
        .collect();
    assert_eq!(ps, vec![5, 7, 11, 13]);
}

#[test]
fn q49_row_links_to_v_polys() {
    let scan = doc(&brauer(&["q49-scan", "--p-max", "14", "--family", "quasi-diagonal-quartic"]));
    let row = scan["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["p"] == 13)
        .unwrap()
        .clone();
    let v = doc(&brauer(&["v-polys", "--family", "quasi-diagonal-quartic", "--p", "13"]));
    assert_eq!(row["v_hash"], v["result"]["v_hash"]);
    assert_eq!(v["result"]["v1"]["coeffs"], serde_json::json!([1, 10]));
    assert_eq!(row["verdict"], "coprime");
}

#[test]
fn output_is_deterministic() {
    let args = ["height-scan", "--family", "quasi-diagonal-quartic", "--p", "13", "--mode", "x"];
    let a = doc(&brauer(&args));
    let b = doc(&brauer(&args));
    assert_eq!(body(&a), body(&b));
    let rows = a["result"]["rows"].as_array().unwrap();
    let h2: Vec<u64> = rows
        .iter()
        .filter(|r| r["classification"]["class"] == "height2")
        .map(|r| r["x"].as_u64().unwrap())
        .collect();
    assert_eq!(h2, vec![9]);
}

#[test]
fn sampled_scan_depends_on_seed_only() {
    let run = |seed: &str| {
        doc(&brauer(&[
            "height-scan", "--family", "quartic-pencil-1", "--p", "13", "--sample", "4", "--seed", seed,
        ]))
    };
    assert_eq!(body(&run("7")), body(&run("7")));
    assert_eq!(run("7")["seed"], 7);
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["--cache-dir", path, "v-polys", "--family", "quasi-diagonal-quartic", "--p", "13"];
    let first = doc(&brauer(&args));
    assert_eq!(first["meta"]["cached"], false);
    let second = doc(&brauer(&args));
    assert_eq!(second["meta"]["cached"], true);
    assert_eq!(body(&first), body(&second));
    let other = doc(&brauer(&[
        "--cache-dir", path, "--seed", "9", "v-polys", "--family", "quasi-diagonal-quartic", "--p", "13",
    ]));
    assert_eq!(other["meta"]["cached"], false, "a new seed misses the cache");
    let bypass = doc(&brauer(&[&args[..], &["--no-cache"]].concat()));
    assert_eq!(bypass["meta"]["cached"], false);
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# test run\nprecision = 3\nseed = 11\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let d = doc(&brauer(&["--config", cfg, "gamma-check", "--p", "13"]));
    assert_eq!(d["seed"], 11);
    assert_eq!(d["result"]["alpha"]["precision"], 3);
    let d = doc(&brauer(&["--config", cfg, "--N", "4", "gamma-check", "--p", "13"]));
    assert_eq!(d["result"]["alpha"]["precision"], 4);
    std::fs::write(dir.path().join("bad.conf"), "precision = 1\n").unwrap();
    let bad = dir.path().join("bad.conf");
    let out = brauer(&["--config", bad.to_str().unwrap(), "families"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn log_coeffs_pass_the_oracle() {
    let out = brauer(&[
        "log-coeffs", "--family", "quartic-pencil-2", "--p", "7", "--c", "2,3,1,5", "--lambda", "3", "--count", "30",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(doc(&out)["evidence"]["oracle_checked"], 30);
}

#[test]
fn slope_factor_functional_equation() {
    let d = doc(&brauer(&["slope-factor", "--coeffs", "1,-26,25", "--p", "5", "--N", "6"]));
    assert_eq!(d["result"]["h"], 1);
    assert_eq!(d["result"]["functional_equation"]["holds"], true);
    assert_eq!(d["result"]["functional_equation"]["c"]["signed"], -25);
}

#[test]
fn point_count_of_fermat_quartic() {
    let d = doc(&brauer(&["point-count", "--form", "1:4,0,0,0;1:0,4,0,0;1:0,0,4,0;1:0,0,0,4", "--q", "5"]));
    assert_eq!(d["result"]["count"], 0);
}

#[test]
fn jacobi_sum_of_quadratic_character() {
    let d = doc(&brauer(&["jacobi-sum", "--p", "5", "--d", "2", "--k1", "1", "--k2", "1"]));
    assert_eq!(d["result"]["integer"], -1);
}

#[test]
fn power_structure_of_a_square() {
    let d = doc(&brauer(&["power-structure", "--coeffs", "1,2,1"]));
    assert_eq!(d["result"]["r"], 2);
}

#[test]
fn log_coeffs_oracle_on_strided_families() {
    for (family, p) in [("diagonal-quartic", "5"), ("diagonal-sextic", "7"), ("jacobi-quartic", "5")] {
        let out = brauer(&["log-coeffs", "--family", family, "--p", p, "--count", "12"]);
        assert_eq!(out.status.code(), Some(0), "{family}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(doc(&out)["evidence"]["oracle_checked"].as_u64().unwrap() >= 6);
    }
}
