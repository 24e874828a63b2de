use std::process::{Command, Output};

use quadlcm_core::congruence::SolutionSet;
use quadlcm_core::distance::MinimalDistance;
use quadlcm_core::oracle::{OracleReport, SlopeReport};
use quadlcm_core::PeriodReport;
use serde_json::Value;

fn quadlcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadlcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = quadlcm(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    for key in ["request", "result", "checks"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    v
}

#[test]
fn period_json_for_x2_plus_1() {
    let v = json(&["period", "--poly", "1,0,1", "--k", "1", "--json"]);
    assert_eq!(v["result"]["period"], "5");
    assert_eq!(v["result"]["b_k"], "5");
    assert_eq!(v["result"]["a_k"], "5");
    assert!(v["result"]["residue_convention"].is_string());
    assert_eq!(v["checks"], serde_json::json!({}));
}

#[test]
fn non_periodic_input_exits_1_naming_the_witness() {
    let out = quadlcm(&["period", "--poly", "1,1,0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("i0 = 1"), "{err}");
    assert!(err.contains("D = a^2 * 1^2"), "{err}");
}

#[test]
fn domain_error_in_json_mode_is_structured() {
    let out = quadlcm(&["period", "--poly", "1,3,0", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["result"].is_null());
    assert!(v["error"].as_str().unwrap().contains("i0 = 3"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["period", "--poly", "0,1,1", "--k", "1"][..],
        &["period", "--poly", "1,2", "--k", "1"],
        &["solve", "--poly", "1,0,1", "--prime", "9", "--exp", "2"],
        &["period", "--k", "1"],
        &["asym", "--poly", "1,0,1", "--k", "1", "--csv", "--json"],
        &["mindist", "--poly", "1,0,1", "--prime", "5", "--e-min", "4", "--e-max", "2"],
        &[],
    ] {
        assert_eq!(quadlcm(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn solve_with_brute() {
    let out = quadlcm(&["solve", "--poly", "1,0,1", "--prime", "5", "--exp", "2", "--brute"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("residues: [7, 18]"), "{text}");
    assert!(text.contains("brute: match"), "{text}");

    let v = json(&["solve", "--poly", "1,0,1", "--prime", "5", "--exp", "2", "--brute", "--json"]);
    assert_eq!(v["result"]["residues"], serde_json::json!([7, 18]));
    assert_eq!(v["checks"]["brute"], "match");
}

#[test]
fn brute_and_verify_only_add_checks() {
    let pairs: [(&[&str], &str); 4] = [
        (&["solve", "--poly", "3,-1,4", "--prime", "2", "--exp", "5", "--json"], "--brute"),
        (&["mindist", "--poly", "1,0,-7", "--prime", "3", "--e-max", "6", "--json"], "--brute"),
        (&["period", "--poly", "2,3,-5", "--k", "3", "--json"], "--verify"),
        (&["oracle", "--poly", "1,0,1", "--k", "2", "--json"], "--verify"),
    ];
    for (args, flag) in pairs {
        let plain = json(args);
        let mut with_flag = args.to_vec();
        with_flag.push(flag);
        let checked = json(&with_flag);
        assert_eq!(plain["result"], checked["result"], "{args:?}");
        let plain_checks = plain["checks"].as_object().unwrap();
        let more_checks = checked["checks"].as_object().unwrap();
        assert!(more_checks.len() > plain_checks.len(), "{args:?}");
        for (k, v) in plain_checks {
            assert_eq!(more_checks.get(k), Some(v), "{args:?}");
        }
        assert!(!more_checks.values().any(|v| v == "mismatch" || v == false));
    }
}

#[test]
fn json_results_round_trip() {
    let v = json(&["period", "--poly", "-6,0,-6", "--k", "4", "--json"]);
    let report: PeriodReport = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap()["period"], v["result"]["period"]);
    assert_eq!(report.f.coefficients(), (1, 0, 1));
    assert_eq!(v["request"]["normalized"]["content"], 6);
    assert_eq!(v["request"]["normalized"]["negated"], true);
    let mut expected = v["result"].clone();
    expected.as_object_mut().unwrap().remove("residue_convention");
    assert_eq!(serde_json::to_value(&report).unwrap(), expected);

    let v = json(&["solve", "--poly", "1,0,-17", "--prime", "2", "--exp", "7", "--json"]);
    let set: SolutionSet = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(set.len(), 4);

    let v = json(&["mindist", "--poly", "1,0,1", "--prime", "2", "--e-max", "3", "--json"]);
    let rows: Vec<MinimalDistance> = serde_json::from_value(v["result"]["rows"].clone()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[2].d.is_infinite());

    let v = json(&["oracle", "--poly", "1,0,1", "--k", "1", "--json"]);
    let report: OracleReport = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(report.empirical_period, 5);

    let v = json(&["asym", "--poly", "1,0,1", "--k", "1", "--json"]);
    let report: SlopeReport = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v["result"]);
}

#[test]
fn asym_csv() {
    let out = quadlcm(&["asym", "--poly", "1,0,2", "--k", "2", "--samples", "1000,10000", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,log_lcm,ratio,predicted_C"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "1000");
    assert_eq!(rows[1][3], "6");
    let ratio: f64 = rows[1][2].parse().unwrap();
    assert!((ratio - 6.0).abs() < 0.6, "{ratio}");
}

#[test]
fn quick_selftest_passes() {
    let out = quadlcm(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{text}");
}
