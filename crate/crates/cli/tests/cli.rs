use std::process::{Command, Output};

use ca1_core::baskets::{Enumeration, ProofTableRow};
use ca1_core::catalog::{Check, Contraction, WeightReport};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ca1"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("ca1 runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    (out.status.code().unwrap(), v)
}

fn envelope_ok(v: &Value, command: &str) {
    assert_eq!(v["command"], command);
    assert!(v["inputs"].is_object());
    assert!(!v["results"].is_null());
    let checks: Vec<Check> = serde_json::from_value(v["checks"].clone()).unwrap();
    assert!(checks.iter().all(|c| c.pass), "{checks:?}");
}

#[test]
fn contractions_round_trip() {
    let (code, v) = json(&["contractions", "--N", "9"]);
    assert_eq!(code, 0);
    envelope_ok(&v, "contractions");
    let list: Vec<Contraction> =
        serde_json::from_value(v["results"]["contractions"].clone()).unwrap();
    assert_eq!(list.len(), 6);
    assert_eq!(
        serde_json::to_value(&list).unwrap(),
        v["results"]["contractions"]
    );
    assert_eq!(list[3].e3.to_string(), "1/4");
    assert_eq!(v["results"]["contractions"][3]["E3"], "1/4");
}

#[test]
fn baskets_and_table_round_trip() {
    let (code, v) = json(&["baskets", "--d", "1", "--r-bound", "20"]);
    assert_eq!(code, 0);
    envelope_ok(&v, "baskets");
    let en: Enumeration = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&en).unwrap(), v["results"]);
    assert!(en.candidates.iter().all(|c| c.a >= 2));

    let (code, v) = json(&["proof-table"]);
    assert_eq!(code, 0);
    let rows: Vec<ProofTableRow> = serde_json::from_value(v["results"]["rows"].clone()).unwrap();
    assert_eq!(rows.len(), 10);
}

#[test]
fn verify_exit_codes() {
    let (code, v) = json(&["verify", "--N", "8", "--weights", "2,4,3,1"]);
    assert_eq!(code, 0);
    envelope_ok(&v, "verify");
    let rep: WeightReport = serde_json::from_value(v["results"]["report"].clone()).unwrap();
    assert_eq!(rep.basket.unwrap().a, 3);

    let (code, v) = json(&["verify", "--N", "6", "--weights", "1,5,3,2", "--seed", "7"]);
    assert_eq!(code, 1);
    envelope_ok(&v, "verify");
    assert_eq!(v["inputs"]["seed"], 7);
    assert_eq!(
        v["results"]["report"]["analysis"]["verdict"]["verdict"],
        "non-terminal"
    );
}

#[test]
fn guard_prime_is_reproducible() {
    let args = ["verify", "--N", "6", "--weights", "1,3,2,1", "--seed", "42"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a["results"]["guard"], b["results"]["guard"]);
}

#[test]
fn bad_input_exits_64() {
    for args in [
        vec!["verify", "--N", "1", "--weights", "1,1,1,1"],
        vec!["verify", "--N", "4", "--weights", "1,0,3,2"],
        vec!["rr-dims", "--a", "2", "--basket", "4:2"],
        vec!["duval", "--s", "3", "--contracted", "7"],
        vec!["special-surface", "--a", "3", "--p", "1,1", "--N", "5"],
        vec!["baskets", "--d", "4"],
        vec!["no-such-command"],
    ] {
        assert_eq!(run(&args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn inconsistent_basket_exits_2() {
    let out = run(&["rr-dims", "--a", "3", "--basket", "3:1,3:1,3:1,3:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconsistent basket"));
}

#[test]
fn table_output_has_plain_tags_without_colour() {
    let out = run(&["duval", "--s", "5", "--contracted", "19"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS left intersection = 1/(s1+1): 1/3 vs 1/3"));
    assert!(!text.contains('\x1b'));
}

#[test]
fn rr_dims_flags_the_closed_form_without_failing() {
    let (code, v) = json(&["rr-dims", "--a", "4", "--basket", "5:2"]);
    assert_eq!(code, 0);
    let adv = v["results"]["advisories"].as_array().unwrap();
    assert_eq!(adv.len(), 2);
    assert_eq!(v["results"]["dims"][2]["closed_form"], 4);
    assert_eq!(v["results"]["dims"][2]["dim_max_ideal_quotient"], 3);
}

#[test]
fn special_surface_type() {
    let (code, v) = json(&["special-surface", "--a", "3", "--p", "0", "--N", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["type"], 5);
}
