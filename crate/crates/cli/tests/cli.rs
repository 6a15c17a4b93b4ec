use serde_json::Value;
use std::process::{Command, Output};

fn swcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = swcalc(&all);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn beta_gamma_simple_pole() {
    let (code, v) = json(&["ope", "beta[1]", "gamma[1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["poles"], serde_json::json!({ "1": "one" }));
}

#[test]
fn regular_pair() {
    let o = swcalc(&["ope", "b[1]", "b[1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "regular");
}

#[test]
fn parse_examples() {
    let o = swcalc(&["parse", "no(beta[1], d(gamma[1]))"]);
    assert_eq!(stdout(&o).trim(), "no(beta[1],d(gamma[1]))");
    let o = swcalc(&["parse", "--algebra", "swinf", "-(1/6)*no(J[0,0],J[0,0],J[0,0])"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-(1/6)*no(J[0,0],J[0,0],J[0,0])");
}

#[test]
fn syntax_and_usage_errors_exit_two() {
    let o = swcalc(&["parse", "no(b[1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset"));
    assert_eq!(swcalc(&["parse", "q[1]"]).status.code(), Some(2));
    assert_eq!(swcalc(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(swcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(swcalc(&["ope", "b[1]", "c[1]", "--algebra", "zz:1"]).status.code(), Some(2));
}

#[test]
fn gl11_seven_checks() {
    let (code, v) = json(&["verify", "gl11", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["suite"], "gl11");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(v["version"].is_string() && v["context"].is_string());
}

#[test]
fn relations_n1() {
    let (code, v) = json(&["verify", "relations", "--n", "1"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"dim relations at weight 3/2 = 1"), "{ids:?}");
    let (_, r) = json(&["relations", "--n", "1", "--weight", "3/2"]);
    assert_eq!(r["dim"], 1);
    assert_eq!(r["singular"], serde_json::json!([true]));
}

#[test]
fn v2_minus_one_plus_one() {
    let (code, v) = json(&["ope", "--algebra", "V:2", "J[-,1]", "J[+,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["poles"]["4"], "2*one");
    let (_, want) = json(&["parse", "--algebra", "V:2", "J[1,1] - J[0,1]"]);
    assert_eq!(v["poles"]["2"], want["canonical"]);
    assert!(v["poles"]["3"].is_null());
}

#[test]
fn nproduct_orders() {
    let o = swcalc(&["nproduct", "beta[1]", "gamma[1]", "--order", "0"]);
    assert_eq!(stdout(&o).trim(), "one");
    let o = swcalc(&["nproduct", "beta[1]", "gamma[1]", "--order", "-1"]);
    assert_eq!(stdout(&o).trim(), "no(beta[1],gamma[1])");
}

#[test]
fn decouple_realizes() {
    let (code, v) = json(&["decouple", "--n", "1", "--gen", "+,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["realizes"], true);
}

#[test]
fn invariants_flags() {
    let (_, v) = json(&["invariants", "--n", "1", "--first-relation"]);
    assert_eq!(v["first_relation"], "3/2");
    let (_, v) = json(&["invariants", "--n", "2", "--weight", "2", "--dim", "--span"]);
    assert_eq!(v["invariant_dim"], v["weyl_span_dim"]);
    let o = swcalc(&["invariants", "--n", "2", "--weight", "1", "--triplets"]);
    let text = stdout(&o);
    assert!(!text.is_empty());
    assert!(text.lines().all(|l| l.split(' ').count() == 3), "{text}");
}

#[test]
fn commutant_low_weight() {
    let (code, v) = json(&["commutant", "--n", "2", "--weight", "1", "--level", "symbolic"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["invariant_dim"], 2);
}

#[test]
fn walg_named_fields() {
    let (code, v) = json(&["walg", "ope", "--n", "2", "--lhs", "T", "--rhs", "T", "--words"]);
    assert_eq!(code, 0);
    assert_eq!(v["poles"]["2"], "(2)*T");
    assert_eq!(v["poles"]["1"], "(1)*d(T)");
    let (code, v) = json(&["walg", "ope", "--lhs", "H", "--rhs", "G+", "--k", "3"]);
    assert_eq!(code, 0);
    assert!(v["poles"]["3"].is_string());
}

#[test]
fn identify_checks() {
    let (code, v) = json(&["identify", "--check", "gl22remark"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 28);
    let (code, _) = json(&["identify", "--check", "w2b2", "--k", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn jobs_do_not_change_reports() {
    let strip = |mut v: Value| {
        v["wall_time_ms"] = Value::Null;
        v
    };
    let (_, a) = json(&["verify", "kernels", "--jobs", "1"]);
    let (_, b) = json(&["verify", "kernels", "--jobs", "4"]);
    assert_eq!(strip(a), strip(b));
}
