use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn habicht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_habicht"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("habicht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn dp_of_single_polynomial_is_itself() {
    let path = write_temp("single.json", r#"{"polys": [[1, 0, 1]]}"#);
    let out = habicht(&["dp", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out), serde_json::json!([1, 0, 1]));
}

#[test]
fn dp_of_two_polynomial_family() {
    // cm rows [1, 2, 3] and [0, 4, 5]: c1 = det[[1,2],[0,4]] = 4, c0 = det[[1,3],[0,5]] = 5.
    let path = write_temp("pair.json", r#"{"polys": [[3, 2, 1], [5, 4]]}"#);
    let out = habicht(&["dp", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out), serde_json::json!([5, 4]));
}

#[test]
fn big_coefficients_round_trip() {
    let big = "123456789012345678901234567890";
    let path = write_temp("big.json", &format!(r#"{{"polys": [[{big}, 1]]}}"#));
    let out = habicht(&["dp", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(big), "{text}");
}

#[test]
fn subres_reports_block_sizes() {
    let out = habicht(&[
        "subres", "--random", "3,3,4", "--seed", "7", "--delta", "1,1",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["delta0"], 2);
    assert_eq!(v["degree_bound"], 1);
    let poly = v["poly"].as_array().unwrap();
    assert!(poly.len() <= 2);
}

#[test]
fn subres_at_zero_index_is_first_polynomial() {
    let gen = habicht(&["gen", "--degrees", "3,3,4", "--seed", "5"]);
    assert!(gen.status.success());
    let instance = json(&gen);
    let sub = habicht(&[
        "subres", "--random", "3,3,4", "--seed", "5", "--delta", "0,0",
    ]);
    assert!(sub.status.success());
    assert_eq!(json(&sub)["poly"], instance["polys"][0]);
}

#[test]
fn generated_instance_feeds_back_as_input() {
    let gen = habicht(&["gen", "--degrees", "3,3,4", "--seed", "11"]);
    let path = write_temp("gen.json", std::str::from_utf8(&gen.stdout).unwrap());
    let from_file = habicht(&[
        "subres",
        "--input",
        path.to_str().unwrap(),
        "--delta",
        "1,2",
    ]);
    let from_seed = habicht(&[
        "subres", "--random", "3,3,4", "--seed", "11", "--delta", "1,2",
    ]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_seed.stdout);
}

#[test]
fn out_of_range_index_is_invalid_input() {
    let out = habicht(&["subres", "--random", "3,3,4", "--delta", "3,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_is_invalid() {
    let path = write_temp("bad.json", r#"{"polys": "nope"}"#);
    let out = habicht(&["dp", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_triple() {
    let out = habicht(&[
        "verify", "--random", "5,5,6", "--w0", "1,1", "--k", "1", "--i", "1", "--trials", "3",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cases"][0]["epsilon"], 3);
    assert_eq!(v["cases"][0]["u"], serde_json::json!([3, 2]));
    assert_eq!(v["summary"]["equal"], 3);
    assert_eq!(v["summary"]["all_verified"], true);
}

#[test]
fn verify_negative_control_fails() {
    let out = habicht(&[
        "verify",
        "--random",
        "5,5,6",
        "--w0",
        "1,1",
        "--k",
        "1",
        "--i",
        "1",
        "--trials",
        "3",
        "--epsilon-off-by-one",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["cases"][0]["epsilon"], 4);
    assert_eq!(v["summary"]["unequal"], 3);
}

#[test]
fn verify_writes_json_file() {
    let dir = std::env::temp_dir().join(format!("habicht-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = habicht(&[
        "verify",
        "--random",
        "3,3,4",
        "--sweep",
        "--trials",
        "2",
        "--json-out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["all_verified"], true);
}

#[test]
fn reduce_strategies() {
    let a = habicht(&["reduce", "--random", "5,5,6", "--target", "3,2"]);
    assert!(a.status.success());
    let a = json(&a);
    assert_eq!(a["strategy"], "A");
    assert_eq!(a["steps"].as_array().unwrap().len(), 6);
    assert_eq!(a["base"].as_array().unwrap().len(), 6);

    let b = habicht(&[
        "reduce",
        "--random",
        "5,5,6",
        "--target",
        "3,2",
        "--strategy",
        "B",
    ]);
    assert!(b.status.success());
    let b = json(&b);
    let steps = b["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1]["k"], 2);
    assert_eq!(steps[1]["epsilon"], 4);
}

#[test]
fn reduce_boundary_target_needs_no_steps() {
    let out = habicht(&["reduce", "--random", "5,5,6", "--target", "0,3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["steps"].as_array().unwrap().is_empty());
    assert_eq!(v["base"], serde_json::json!([[0, 3]]));
}

#[test]
fn reduce_rejects_two_polynomial_systems() {
    let out = habicht(&["reduce", "--random", "4,6", "--target", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
