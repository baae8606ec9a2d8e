use std::process::{Command, Output};

fn binform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binform")).args(args).output().expect("spawn binform")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn discover_text_and_json() {
    let o = binform(&["discover", "--n", "2", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# n = 2, degree = 2, weight = 2, monomials = 2, dimension = 1\na0*a2 - a1^2\n");

    let o = binform(&["discover", "--n", "4", "--degree", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["basis", "degree", "monomial_count", "n", "status", "weight"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["weight"], 6);
    assert_eq!(v["basis"][0], "a0*a2*a4 - a0*a3^2 - a1^2*a4 + 2*a1*a2*a3 - a2^3");

    let o = binform(&["discover", "--n", "3", "--degree", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "infeasible_odd_ng");
    assert!(v["weight"].is_null());
    assert_eq!(v["basis"].as_array().unwrap().len(), 0);
}

#[test]
fn analyze_and_apply() {
    let o = binform(&["analyze", "--n", "4", "a0*a4 - 4*a1*a3 + 3*a2^2"]);
    assert_eq!(stdout(&o), "homogeneous: true\ndegree: 2\nisobaric: true\nweight: 4\ndefect: 0\n");
    let o = binform(&["analyze", "--n", "2", "a0 + a1^2"]);
    assert!(stdout(&o).contains("degree: none"));

    let o = binform(&["apply", "--op", "d", "--n", "2", "--power", "3", "a2"]);
    assert_eq!(stdout(&o), "0\n");
    let o = binform(&["apply", "--op", "delta", "--n", "2", "--power", "2", "a0"]);
    assert_eq!(stdout(&o), "2*a2\n");
}

#[test]
fn commutator_exit_status() {
    let o = binform(&["commutator", "--n", "3", "a0^2*a3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
    let o = binform(&["commutator", "--n", "5", "--k", "3", "--which", "d", "a1*a4 - 2/3*a2*a3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = binform(&["commutator", "--n", "2", "--k", "0", "--which", "d", "a1"]);
    assert_eq!(o.status.code(), Some(2));
    // --k without --which is a usage error
    let o = binform(&["commutator", "--n", "2", "--k", "2", "a1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_pass_and_fail() {
    let o = binform(&["verify", "--n", "2", "--trials", "50", "--seed", "7", "a0*a2 - a1^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass"));

    let o = binform(&["verify", "--n", "2", "--trials", "50", "--seed", "7", "--json", "a1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["detail"]["reason"], "counterexample");
    assert_ne!(v["detail"]["lhs"], v["detail"]["rhs"]);

    // degree 2, weight 3: ng = 6 = 2p, so this reaches the random trials
    let o = binform(&["verify", "--n", "3", "a0*a3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = binform(&["verify", "--n", "3", "--json", "a0*a2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["detail"]["reason"], "weight_degree_mismatch");
}

#[test]
fn transform_command() {
    let o = binform(&["transform", "--n", "2", "--convention", "plain", "--coeffs", "1,4,3", "--matrix", "2,1,1,1"]);
    assert_eq!(stdout(&o), "15,22,8\n");
    let o = binform(&["transform", "--n", "2", "--coeffs", "1,2,3", "--matrix", "2,1,1,1"]);
    assert_eq!(stdout(&o), "15,11,8\n");
    let o = binform(&["transform", "--n", "1", "--coeffs", "-1/2,3", "--matrix", "0,1,-1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-3,-1/2\n");

    assert_eq!(binform(&["transform", "--n", "2", "--coeffs", "1,2", "--matrix", "1,0,0,1"]).status.code(), Some(2));
    assert_eq!(binform(&["transform", "--n", "1", "--coeffs", "1,2", "--matrix", "1,2,2,4"]).status.code(), Some(2));
    assert_eq!(binform(&["transform", "--n", "1", "--coeffs", "1,x", "--matrix", "1,0,0,1"]).status.code(), Some(3));
}

#[test]
fn parse_errors_exit_3() {
    let o = binform(&["analyze", "--n", "4", "a5"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("out of range"), "{err}");
    assert_eq!(binform(&["analyze", "--n", "2", "-a0"]).status.code(), Some(3));
}
