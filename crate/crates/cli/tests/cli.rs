use std::process::{Command, Output};

use serde_json::Value;

use decim::moments::MomentReport;

fn decim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decim")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = decim(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let out = decim(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn lambda_mu_worked_example() {
    let v = json(&["lambda-mu", "--word", "2212221", "--modulus", "8"]);
    assert_eq!(v, serde_json::json!({ "lambda": 2, "mu": 5 }));
    assert_eq!(stdout(&decim(&["lambda-mu", "--word", "2212221", "--modulus", "8"])), "{\"lambda\":2,\"mu\":5}\n");
}

#[test]
fn closed_form_mean_period() {
    let v = json(&["closed", "--p", "1/2", "--t", "99"]);
    assert_eq!(v["e_mu"], "66");
    assert_eq!(v["e_lambda"], "4/9");
    assert_eq!(v["engine"], "closed");
}

#[test]
fn exact_at_modulus_one() {
    let v = json(&["exact", "--p", "1/2", "--t", "1"]);
    assert_eq!(v["e_lambda"], "0");
    assert_eq!(v["e_mu"], "1");
}

#[test]
fn exact_and_brute_agree_except_engine() {
    for p in ["1/2", "1/3", "3/4"] {
        let args = |engine| vec![engine, "--p", p, "--t-from", "1", "--t-to", "10"];
        let strip = |s: String| s.replace("\"engine\":\"exact\"", "").replace("\"engine\":\"brute\"", "");
        let exact = stdout(&decim(&args("exact")));
        let brute = stdout(&decim(&args("brute")));
        assert_eq!(exact.lines().count(), 10);
        assert_eq!(strip(exact), strip(brute), "p = {p}");
    }
}

#[test]
fn reports_round_trip() {
    let lines = json_lines(&["exact", "--p", "2/7", "--t-from", "3", "--t-to", "6"]);
    assert_eq!(lines.len(), 4);
    for (v, t) in lines.iter().zip(3..) {
        assert_eq!(v["T"], t);
        let report = MomentReport::from_json(v).unwrap();
        assert_eq!(&report.to_json(), v);
    }
    let mc = json(&["mc", "--p", "1/2", "--t", "12", "--samples", "500", "--seed", "3"]);
    assert_eq!(MomentReport::from_json(&mc).unwrap().to_json(), mc);
}

#[test]
fn csv_sweep() {
    let out = decim(&["exact", "--p", "1/2", "--t-from", "1", "--t-to", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "engine,T,p,e_lambda,var_lambda,e_mu,var_mu,se_lambda,se_mu");
    assert_eq!(rows[1], "exact,1,1/2,0,0,1,0,,");
    assert_eq!(rows[2], "exact,2,1/2,1/4,3/16,5/4,3/16,,");
    assert_eq!(rows.len(), 4);
}

#[test]
fn monte_carlo_is_worker_independent() {
    let run = |w: &str| stdout(&decim(&["mc", "--p", "1/2", "--t", "30", "--samples", "20000", "--seed", "7", "--workers", w]));
    assert_eq!(run("1"), run("3"));
}

#[test]
fn rueppel_and_normalization() {
    let v = json(&["rueppel", "--poly", "0b10011", "--fill", "0b0101"]);
    assert_eq!(v["T"], 15);
    assert_eq!(v["mu"], 10);
    assert_eq!(v["mu"], v["expected_mu"]);
    let n = json(&["normalize-check", "--p", "2/3", "--t-max", "50"]);
    assert_eq!(n["ok"], true);
}

#[test]
fn word_structure_commands() {
    let v = json(&["classify", "--word", "12"]);
    assert_eq!(v["class"], "omega3");
    assert_eq!(v["moduli"], serde_json::json!([3]));
    let c = json(&["count", "--n1", "1", "--n2", "1", "--t", "3"]);
    assert_eq!(c["count"], 2);
    let o = json(&["orbit", "--word", "2212221", "--modulus", "8", "--start", "3"]);
    assert_eq!((o["lambda"].as_u64(), o["mu"].as_u64()), (Some(2), Some(5)));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["exact", "--p", "3/2", "--t", "4"][..],
        &["mc", "--p", "0", "--t", "4"],
        &["rueppel", "--poly", "0b1111", "--fill", "1"],
        &["lambda-mu", "--word", "2212221", "--modulus", "0"],
        &["brute", "--p", "1/2", "--t", "20"],
    ] {
        let out = decim(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &[][..],
        &["exact", "--t", "4"],
        &["exact", "--p", "1/2", "--t-from", "5", "--t-to", "3"],
        &["no-such-command"],
        &["lambda-mu", "--word", "2212221"],
    ] {
        let out = decim(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
