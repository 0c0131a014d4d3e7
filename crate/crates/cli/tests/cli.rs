use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypmut"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report-v1.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let v = validator();
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn thresholds_chi_2() {
    let out = run(&["thresholds", "--chi", "2"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    let r = &doc["results"];
    assert!((num(&r["h"]) - 1.76275).abs() < 1e-5);
    assert_eq!(num(&r["g"]), 17.0);
    assert!((num(&r["max_length_for_chi"]) - 0.01516).abs() < 5e-4);
    assert!((num(&r["min_l_for_radius"]) - 14.90).abs() < 0.01);
    assert!((num(&r["min_l_for_total_length"]) - 20.76).abs() < 0.01);
}

#[test]
fn thresholds_chi_1_uses_the_formula() {
    let out = run(&["thresholds", "--chi", "1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    let h = num(&doc["results"]["h"]);
    assert!((h - 2.0 * 0.5f64.sqrt().asinh()).abs() < 1e-11);
}

#[test]
fn thresholds_rejects_zero() {
    let out = run(&["thresholds", "--chi", "0"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&run(&["thresholds", "--chi", "abc"])), 2);
    assert_eq!(code(&run(&["thresholds"])), 2);
}

#[test]
fn pack_crossing_writes_json_and_svg() {
    let json_path = scratch("crossing2.json");
    let svg_path = scratch("crossing2.svg");
    let out = run(&[
        "pack",
        "crossing",
        "--n",
        "2",
        "--json",
        json_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_valid(&doc);
    assert!((num(&doc["results"]["ell_w"]) - 1.236_068_0).abs() < 1e-7);
    assert_eq!(doc, json(&out));

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let tree = roxmltree::Document::parse(&svg).expect("well-formed SVG");
    let root = tree.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("height"), Some("500"));
    let shapes: Vec<_> = root
        .descendants()
        .filter(|n| matches!(n.tag_name().name(), "circle" | "line"))
        .collect();
    let circles = doc["results"]["circles"].as_array().unwrap().len();
    assert_eq!(shapes.len(), circles);
    for s in &shapes {
        let class = s.attribute("class").unwrap();
        assert!(["white-face", "shaded-face", "horoball"].contains(&class));
    }
}

#[test]
fn pack_knot_bound_table() {
    let out = run(&["pack", "knot", "--n", "4"]);
    assert_eq!(code(&out), 0);
    assert_valid(&json(&out));
    let table = String::from_utf8(out.stderr).unwrap();
    let line = table.lines().find(|l| l.contains("2/3 < D(B) < 1")).expect("bound row");
    assert!(line.starts_with("PASS"));
    let quiet = run(&["pack", "knot", "--n", "4", "--quiet"]);
    assert!(quiet.stderr.is_empty());
}

#[test]
fn pack_knot_svg_has_horoballs() {
    let svg_path = scratch("knot3.svg");
    let out = run(&[
        "pack",
        "knot",
        "--n",
        "3",
        "--svg",
        svg_path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let tree = roxmltree::Document::parse(&svg).unwrap();
    let horoballs = tree
        .descendants()
        .filter(|n| n.attribute("class") == Some("horoball"))
        .count();
    assert_eq!(horoballs, 4);
}

#[test]
fn pack_rejects_small_n() {
    assert_eq!(code(&run(&["pack", "crossing", "--n", "1"])), 2);
    assert_eq!(code(&run(&["pack", "square", "--n", "3"])), 2);
}

#[test]
fn certify_large_tuple() {
    let out = run(&["certify", "--q", "76,77,79,81,83"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    let r = &doc["results"];
    assert_eq!(r["preserved_lengths"], 5);
    assert_eq!(r["mutant_count_enumerated"], 12);
    assert_eq!(r["thresholds_met"], true);
}

#[test]
fn certify_closed_mode() {
    let out = run(&["certify", "--q", "76,77,79,81,83", "--mode", "closed"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    assert_eq!(doc["results"]["preserved_lengths"], 6);
    assert_eq!(doc["results"]["mutant_count_formula"], 3);
}

#[test]
fn certify_small_tuple_fails() {
    let out = run(&["certify", "--q", "8,9,11,13,15"]);
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_valid(&doc);
    let failing: Vec<i64> = doc["results"]["failing_entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    assert_eq!(failing, vec![8, 9, 11, 13, 15]);
}

#[test]
fn certify_usage_errors() {
    assert_eq!(code(&run(&["certify", "--q", "8,9"])), 2);
    assert_eq!(code(&run(&["certify", "--q", "8,nine,11"])), 2);
    assert_eq!(code(&run(&["certify", "--q", "-2,3,7"])), 2);
}

#[test]
fn mutants_all_and_unlinked() {
    let out = run(&["mutants", "--q", "8,9,11,13,15", "--generators", "all"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    assert_eq!(doc["results"]["count"], 12);
    assert_eq!(doc["results"]["discrepancy"], false);
    assert_eq!(doc["results"]["forms"].as_array().unwrap().len(), 12);

    let out = run(&["mutants", "--q", "8,9,11,13,15", "--generators", "unlinked"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    assert_eq!(doc["results"]["formula"], 3);
    assert_eq!(doc["results"]["count"], 12);
    assert_eq!(doc["results"]["discrepancy"], true);
    assert!(!doc["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn mutants_size_guard() {
    let q = "8,9,11,13,15,17,19,21,23,25,27,29,31";
    let out = run(&["mutants", "--q", q]);
    assert_eq!(code(&out), 4);
    assert!(out.stdout.is_empty());
}

#[test]
fn mutants_large_orbit_is_not_listed() {
    let out = run(&["mutants", "--q", "8,9,11,13,15,17,19", "--quiet"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_valid(&doc);
    assert_eq!(doc["results"]["count"], 360);
    assert!(doc["results"]["forms"].is_null());
}

#[test]
fn json_out_matches_stdout() {
    let path = scratch("thresholds3.json");
    let out = run(&["--json-out", path.to_str().unwrap(), "thresholds", "--chi", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["thresholds", "--chi", "2"],
        vec!["pack", "knot", "--n", "5"],
        vec!["certify", "--q", "76,77,79,81,83"],
        vec!["mutants", "--q", "8,9,11,13,15"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
    let (p1, p2) = (scratch("det1.svg"), scratch("det2.svg"));
    run(&["pack", "crossing", "--n", "6", "--svg", p1.to_str().unwrap()]);
    run(&["pack", "crossing", "--n", "6", "--svg", p2.to_str().unwrap()]);
    assert_eq!(std::fs::read(p1).unwrap(), std::fs::read(p2).unwrap());
}

#[test]
fn floats_have_at_most_twelve_significant_digits() {
    let out = run(&["pack", "knot", "--n", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for token in text.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-')) {
        if token.contains('.') && !token.contains('e') {
            let digits: String = token.chars().filter(char::is_ascii_digit).collect();
            let significant = digits.trim_start_matches('0');
            assert!(significant.len() <= 12, "{token}");
        }
    }
}
