use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucaspoly"))
        .args(args)
        .env_remove("LUCASPOLY_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

const CE: [&str; 6] = ["--char", "7", "--P", "4*T", "--Q", "3*T^2-1"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn term_of_counterexample_is_three_u2_u3() {
    let u6 = run(&with(&["term"], &with(&CE, &["--n", "6"])));
    assert!(u6.status.success());
    // U_2 = 4T, U_3 = 13T^2 + 1 = 6T^2 + 1, so 3 U_2 U_3 = 72T^3 + 12T = 2T^3 + 5T
    assert_eq!(stdout(&u6), "2*T^3+5*T");
}

#[test]
fn classify_json_of_counterexample() {
    let out = run(&with(&["classify"], &with(&CE, &["--json"])));
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["exceptional"], json!({"n": 6, "lambda": "3"}));
    assert_eq!(v["skipped"], json!([]));
    assert_eq!(v["trivial"], json!([1]));
}

#[test]
fn qn_at_one_is_one() {
    let out = run(&["qn", "--char", "0", "--P", "T", "--Q", "-1", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1");
}

#[test]
fn qn_of_counterexample_at_six() {
    let out = run(&with(&["qn"], &with(&CE, &["--n", "6", "--json"])));
    assert_eq!(json_of(&out), json!({"n": 6, "q": "3"}));
}

#[test]
fn term_range() {
    let out = run(&["term", "--P", "T", "--Q", "-1", "--upto", "3"]);
    assert_eq!(stdout(&out), "U_0 = 0\nU_1 = 1\nU_2 = T\nU_3 = T^2+1");
}

#[test]
fn oracle_agrees_with_classification() {
    let out = run(&with(&["oracle"], &with(&CE, &["--upto", "8", "--json"])));
    let rows = json_of(&out);
    let missing: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["primitive"] == json!(false))
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(missing, vec![1, 6]);
}

#[test]
fn rank_and_valuation() {
    let base = ["--char", "5", "--P", "T", "--Q", "-1", "--prime", "T-1"];
    assert_eq!(stdout(&run(&with(&["rank"], &base))), "5");
    assert_eq!(stdout(&run(&with(&["valuation"], &with(&base, &["--n", "25"])))), "12");
    let out = run(&["rank", "--P", "T", "--Q", "T^2-1", "--prime", "T-1", "--json"]);
    assert_eq!(json_of(&out)["rank"], json!("inf"));
    let out = run(&["valuation", "--poly", "0", "--prime", "T"]);
    assert_eq!(stdout(&out), "inf");
}

#[test]
fn factor_output() {
    let out = run(&["factor", "--char", "5", "--poly", "T^2+1"]);
    assert_eq!(stdout(&out), "1 * (T+2)^1 * (T+3)^1");
    let out = run(&["factor", "--char", "5", "--poly", "3*T^2+3", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["unit"], json!("3"));
    assert_eq!(v["factors"][0], json!({"poly": "T+2", "mult": 1}));
}

#[test]
fn exit_codes() {
    // domain errors
    assert_eq!(run(&["classify", "--P", "T", "--Q", "T^2"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--P", "1", "--Q", "1"]).status.code(), Some(1));
    assert_eq!(run(&["qn", "--P", "1", "--Q", "1", "--n", "6"]).status.code(), Some(1));
    // usage and parse errors
    let out = run(&["term", "--char", "7", "--P", "1/2*T", "--Q", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 1"));
    assert_eq!(run(&["term", "--P", "2T", "--Q", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["term", "--char", "4", "--P", "T", "--Q", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["term", "--P", "T", "--Q", "1"]).status.code(), Some(2));
    assert_eq!(run(&["factor", "--poly", "T^2+1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = run(&["verify", "--seed", "42", "--trials", "3"]);
    let b = run(&["verify", "--seed", "42", "--trials", "3"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("80/80 checks passed"));
}

#[test]
fn seed_from_environment() {
    let flag = run(&["verify", "--seed", "9", "--trials", "2", "--json"]);
    let env = Command::new(env!("CARGO_BIN_EXE_lucaspoly"))
        .args(["verify", "--trials", "2", "--json"])
        .env("LUCASPOLY_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert_eq!(json_of(&flag)["seed"], json!("9"));
}
