use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_sympair")).args(args).output().unwrap();
    let body = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), body)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn field_info_lists_binomial_constants() {
    for (p, n, want) in [("3", "2", vec!["2"]), ("3", "1", vec!["1", "2"]), ("5", "4", vec!["2", "3"])] {
        let (code, body) = run(&["field-info", "--p", p, "--n", n]);
        assert_eq!(code, 0);
        assert_eq!(strings(&body["results"][0]["irreducible_binomial_constants"]), want);
        assert_eq!(body["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn check_binomial() {
    let (_, body) = run(&["check-binomial", "--p", "3", "--n", "2", "--lambda", "1"]);
    assert_eq!(body["results"][0]["irreducible"], false);
    let (_, body) = run(&["check-binomial", "--p", "3", "--n", "2", "--lambda", "2"]);
    assert_eq!(body["results"][0]["irreducible"], true);
}

#[test]
fn distance_examples() {
    let cases: [(&[&str], u64); 3] = [
        (&["--p", "3", "--n", "2", "--s", "1", "--spec", "field-power:i=1"], 4),
        (&["--p", "3", "--n", "1", "--s", "2", "--beta", "0", "--spec", "type2:j=7,k=1,b=1"], 4),
        (&["--p", "3", "--n", "1", "--s", "1", "--beta", "1", "--spec", "chain:i=0"], 2),
    ];
    for (args, want) in cases {
        let mut full = vec!["distance"];
        full.extend_from_slice(args);
        let (code, body) = run(&full);
        assert_eq!(code, 0, "{body}");
        let r = &body["results"][0];
        assert_eq!(r["formula"]["d_sp"], want);
        assert_eq!(r["oracle"]["d_sp"], want);
        assert_eq!(r["match"], true);
    }
}

#[test]
fn budget_and_exactness() {
    let args = ["distance", "--p", "3", "--n", "2", "--s", "1", "--spec", "field-power:i=1", "--budget", "10"];
    let (code, body) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(body["results"][0]["oracle"]["method"], "upper-bound");
    assert!(body["results"][0]["warning"].is_string());
    let mut exact = args.to_vec();
    exact.push("--exact");
    let (code, body) = run(&exact);
    assert_eq!(code, 4);
    assert_eq!(body["error"]["kind"], "BudgetExceeded");
}

#[test]
fn constraint_violations_exit_2() {
    let (code, body) = run(&["build-code", "--p", "3", "--n", "2", "--spec", "field-power:i=9"]);
    assert_eq!(code, 2);
    assert_eq!(body["error"]["kind"], "ConstraintViolation");
    let (code, body) = run(&["field-info", "--p", "4"]);
    assert_eq!(code, 2);
    assert_eq!(body["error"]["kind"], "NotPrime");
    let (code, body) = run(&["scan", "--target", "mds", "--p", "2", "--n", "3", "--alpha0", "1"]);
    assert_eq!(code, 2);
    assert_eq!(body["error"]["kind"], "ConstructionRefused");
}

#[test]
fn scan_examples() {
    let (code, body) = run(&["scan", "--target", "mds", "--p", "3", "--n", "2", "--s", "1"]);
    assert_eq!(code, 0);
    let mds: Vec<(String, bool)> = body["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["is_mds"] == true)
        .map(|v| (v["spec"].as_str().unwrap().to_string(), v["trivial"].as_bool().unwrap()))
        .collect();
    assert_eq!(
        mds,
        vec![("field-power:i=0".into(), true), ("field-power:i=1".into(), false), ("field-power:i=2".into(), false)]
    );

    let (code, body) = run(&["scan", "--target", "consistency", "--p", "2", "--n", "1", "--s", "3", "--beta", "0"]);
    assert_eq!(code, 0);
    let results = body["results"].as_array().unwrap();
    assert!(results.iter().all(|v| v["match"] == true));
    assert!(results.iter().any(|v| v["spec"] == "type2:j=5,k=0,b=1" && v["oracle_d_sp"] == 4));

    let (_, body) = run(&["scan", "--target", "mds", "--p", "3", "--n", "1", "--s", "1", "--beta", "1"]);
    let mds: Vec<&str> = body["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["is_mds"] == true)
        .map(|v| v["spec"].as_str().unwrap())
        .collect();
    assert_eq!(mds, vec!["chain:i=0"]);
}

#[test]
fn tables_agree() {
    for args in [
        vec!["tables", "--p", "3", "--n", "1", "--s", "2"],
        vec!["tables", "--p", "3", "--n", "2", "--s", "1", "--beta", "0"],
    ] {
        let (code, body) = run(&args);
        assert_eq!(code, 0, "{body}");
        assert!(!body["results"].as_array().unwrap().is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--target", "mds", "--p", "3", "--n", "1", "--s", "2", "--beta", "0", "--seed", "5", "--format", "csv"];
    let a = Command::new(env!("CARGO_BIN_EXE_sympair")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_sympair")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("d_sp,generator,is_mds"));
}
