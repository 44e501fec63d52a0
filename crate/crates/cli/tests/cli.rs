use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const W1: &str = "1>2<3<4>5>6<2";
const W2: &str = "6>3<4<8>7";

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle-ext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn ext_report_over_qstar() {
    let q = fixture("qstar.json");
    let v = json(&["ext", &q, "--arc1", W1, "--arc2", W2]);
    assert_eq!(v["dim_MN"], 2);
    assert_eq!(v["dim_NM"], 1);
    assert_eq!(v["Int"], 4);
    assert_eq!(v["k"], 1);
    assert_eq!(v["k_prime"], 0);
    assert_eq!(v["basis_MN"].as_array().unwrap().len(), 2);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_agrees_with_ext() {
    let q = fixture("qstar.json");
    let v = json(&["oracle-ext", &q, "--arc1", W1, "--arc2", W2]);
    assert_eq!((v["dim_MN"].as_u64(), v["dim_NM"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn self_crossings_are_listed_once() {
    let q = fixture("qstar.json");
    let v = json(&["crossings", &q, "--arc1", W1, "--arc2", W1]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 1);
    assert_eq!(list[0]["kind"], "module");
    assert_eq!(list[0]["data"]["overlap"], "(2)");
}

#[test]
fn crossing_sequences_and_strings_agree() {
    let q = fixture("qstar.json");
    let a = json(&["crossings", &q, "--seq1", "1,2,3,4,5,6,2", "--seq2", "6,3,4,8,7"]);
    let b = json(&["crossings", &q, "--arc1", W1, "--arc2", W2]);
    assert_eq!(a, b);
    assert_eq!(a.as_array().unwrap().len(), 4);
}

#[test]
fn crossing_order_is_stable() {
    let q = fixture("qstar.json");
    let first = run(&["crossings", &q, "--arc1", W1, "--arc2", W2]);
    let second = run(&["crossings", &q, "--arc1", W1, "--arc2", W2]);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("[0] Forward: 1>2<3<4>5>6<2 crosses 6>3<4<8>7 in module (6)"));
}

#[test]
fn smooth_prints_strings_and_pieces() {
    let q = fixture("qstar.json");
    let v = json(&["smooth", &q, "--arc1", W1, "--arc2", W2, "--crossing", "2"]);
    assert_eq!(v["crossing"]["kind"], "arrow");
    assert_eq!(v["w3"]["module"], "1>2<3<4>5>6<2>7<8>4>3<6");
    assert_eq!(v["w4"]["arc"], "1");
    assert_eq!(v["w4"]["boundary"], false);
    assert_eq!(v["w4"]["piece"]["edge"], "1");
    let out = run(&["smooth", &q, "--arc1", W1, "--arc2", W2, "--crossing", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quiver_lists_the_potential() {
    let v = json(&["quiver", &fixture("qstar.json")]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(v["arrows"].as_array().unwrap().len(), 12);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 3);
    assert_eq!(v["relations"].as_array().unwrap().len(), 9);
    assert_eq!(v["marked_points"], 5);
}

#[test]
fn snake_reports_signs() {
    let v = json(&["snake", &fixture("qstar.json"), "--arc1", W2]);
    assert_eq!(v["tiles"].as_array().unwrap().len(), 5);
    let signs: Vec<&str> = v["signs"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(signs, ["+", "-", "-", "+"]);
}

#[test]
fn invalid_input_exits_with_1() {
    let q = fixture("qstar.json");
    let out = run(&["validate", &q, "--arc1", "1>2>7"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "validation");
    assert_eq!(run(&["validate", &q, "--arc1", W1]).status.code(), Some(0));
    assert_eq!(run(&["quiver", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(run(&["crossings", &q, "--arc1", W1]).status.code(), Some(1));
}

#[test]
fn check_sweeps_cleanly() {
    let v = json(&["check", &fixture("pentagon.json"), "--max-len", "4"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["strings"], 3);
    let v = json(&["check", &fixture("annulus.json"), "--max-len", "6", "--parallel", "2"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["strings"], 28);
    assert!(v["crossings"].as_u64().unwrap() > 0);
}
