//! End-to-end tests of the binary: every subcommand, the file formats, and
//! the exit-code contract (0 ok, 1 failed check, 2 bad input).

use std::path::Path;
use std::process::{Command, Output};

use fano4::fan::{projective_space_fan, split_bundle_fan};

fn fano4_bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano4"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_reports_flags_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let fan = split_bundle_fan(&[0, 0, 2]).unwrap().into_fan();
    let good = dir.path().join("z.json");
    std::fs::write(&good, serde_json::to_string(&fan).unwrap()).unwrap();

    let out = fano4_bin(&["fan", "validate", "z.json"], dir.path());
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("smooth: true"));
    assert!(stdout(&out).contains("complete: true"));

    // drop one maximal cone: still a fan, no longer complete -> exit 1
    let p4 = projective_space_fan(4).unwrap();
    let mut value: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&p4).unwrap()).unwrap();
    value["max_cones"].as_array_mut().unwrap().pop();
    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, value.to_string()).unwrap();
    let out = fano4_bin(&["fan", "validate", "partial.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("complete: false"));
    assert!(stdout(&out).contains("facet"));

    // non-primitive ray -> structural error, exit 2
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"dim":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}"#,
    )
    .unwrap();
    let out = fano4_bin(&["fan", "validate", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-primitive"));

    let out = fano4_bin(&["fan", "validate", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_of_a_fan_file() {
    let dir = tempfile::tempdir().unwrap();
    let fan = split_bundle_fan(&[0, 0, 2]).unwrap().into_fan();
    let path = dir.path().join("z.json");
    std::fs::write(&path, serde_json::to_string(&fan).unwrap()).unwrap();

    let out = fano4_bin(&["fan", "invariants", "z.json"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("K^4: 594"));
    assert!(text.contains("chi(-K): 120"));

    let out = fano4_bin(&["fan", "invariants", "z.json", "--format", "json"], dir.path());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["K4"], 594);
    assert_eq!(report["K2c2"], 240);
    assert_eq!(report["chi_mK"], 120);
    assert_eq!(report["rho"], 2);
    assert_eq!(report["provenance"]["K4"], "toric");
}

#[test]
fn recipe_eval_builtin_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = fano4_bin(&["recipe", "eval", "ex1", "--format", "json"], dir.path());
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["report"]["K4"], 253);
    assert_eq!(value["report"]["chi_mK"], 57);

    // a recipe file using every center kind on a split-bundle base
    let recipe = r#"{
        "name": "from-file",
        "base": {"type": "split_bundle", "degrees": [0, 0, 2]},
        "centers": [
            {"type": "section", "normal_degrees": [0, -2]},
            {"type": "section", "normal_degrees": [0, -2]},
            {"type": "ci", "classes": [[1, 0], [2, 0]], "h11": 8}
        ],
        "expected": {"K4": 250, "K2c2": 172, "chi_mK": 57}
    }"#;
    let path = dir.path().join("recipe.json");
    std::fs::write(&path, recipe).unwrap();
    let out = fano4_bin(&["recipe", "eval", "recipe.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("K^4: 250"));

    // fan base with a literal center
    let fan = serde_json::to_string(&projective_space_fan(4).unwrap()).unwrap();
    let recipe = format!(
        r#"{{
        "name": "blown-up P4",
        "base": {{"type": "fan", "fan": {fan}}},
        "centers": [{{"type": "literal", "name": "quadric", "KS2": 8, "chiOS": 1,
                      "c2N": 4, "KZS2": 50, "KSKZS": 20, "b1": 0, "h11": 2, "h02": 0}}]
    }}"#
    );
    let path = dir.path().join("literal.json");
    std::fs::write(&path, recipe).unwrap();
    let out = fano4_bin(&["recipe", "eval", "literal.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("K^4: 431"));

    // expected-only stubs cannot be evaluated
    let out = fano4_bin(&["recipe", "eval", "K1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected values only"));
}

#[test]
fn catalog_verify_passes_and_filters() {
    let dir = tempfile::tempdir().unwrap();
    let out = fano4_bin(&["catalog", "verify"], dir.path());
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for line in ["K4: PASS", "ex1: PASS", "ex2: PASS", "K1: SKIP"] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }

    let out = fano4_bin(&["catalog", "verify", "--name", "ex2"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ex2: PASS");

    let out = fano4_bin(&["catalog", "verify", "--name", "nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_text_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = fano4_bin(&["search", "d1", "--max-degree", "0"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("K^4=324"));
    assert!(text.contains("1 Fano configuration(s)"));

    // the JSON output carries the fan, usable as a fan file again
    let out = fano4_bin(&["search", "d1", "--max-degree", "1", "--format", "json"], dir.path());
    assert!(out.status.success());
    let hits: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let hits = hits.as_array().unwrap();
    assert_eq!(hits.len(), 2);
    let fan_path = dir.path().join("hit.json");
    std::fs::write(&fan_path, hits[1]["fan"].to_string()).unwrap();
    let out = fano4_bin(&["fan", "invariants", "hit.json", "--format", "json"], dir.path());
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["K4"], hits[1]["report"]["K4"]);
    assert_eq!(report["delta"], 3);
}
