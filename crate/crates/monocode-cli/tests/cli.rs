//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

const EXAMPLE: &[&str] = &["--p", "5", "--n", "4", "--a", "3,4,3,1"];

#[test]
fn factor_worked_example() {
    let v = run_json(&[&["factor"], EXAMPLE].concat());
    assert_eq!(v["char_poly"], serde_json::json!(["4", "0", "0", "0", "1"]));
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 4);
    assert_eq!(factors[0]["poly"], serde_json::json!(["1", "1"]));
    assert_eq!(factors[3]["poly"], serde_json::json!(["4", "1"]));
    assert_eq!(v["unit"], "1");
}

#[test]
fn factor_binary_cyclic() {
    let v = run_json(&["factor", "--p", "2", "--n", "3", "--a", "1,1,1"]);
    let factors = v["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0]["poly"], serde_json::json!(["1", "1"]));
    assert_eq!(factors[1]["poly"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn factor_precondition_failure_exits_2() {
    let out = run(&["factor", "--p", "5", "--n", "5", "--a", "1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("gcd(5, 5)"), "stderr: {stderr}");
}

#[test]
fn code_selection_and_distance() {
    let v = run_json(&[&["code"], EXAMPLE, &["--select", "0,1"]].concat());
    assert_eq!(v["k"], 2);
    assert_eq!(v["g"], serde_json::json!(["2", "3", "1"]));
    assert_eq!(
        v["basis"],
        serde_json::json!([["1", "0", "4", "2"], ["0", "1", "4", "1"]])
    );
    assert!(v.get("d").is_none());

    let v = run_json(&[&["distance"], EXAMPLE, &["--select", "0,1"]].concat());
    assert_eq!(v["d"], 3);
}

#[test]
fn enumerate_counts() {
    let v = run_json(&["enumerate", "--p", "2", "--n", "3", "--a", "1,1,1"]);
    assert_eq!(v["count"], 4);
    assert_eq!(v["codes"].as_array().unwrap().len(), 4);
    let v = run_json(&[
        "enumerate",
        "--p",
        "2",
        "--n",
        "3",
        "--a",
        "1,1,1",
        "--skip-trivial",
    ]);
    assert_eq!(v["count"], 2);
}

#[test]
fn distance_guard_exits_3() {
    let out = run(&[
        "distance",
        "--p",
        "5",
        "--n",
        "12",
        "--a",
        "1,1,1,1,1,1,1,1,1,1,1,1",
        "--select",
        "0,1,2,3,4,5,6,7",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));
}

#[test]
fn centralizer_of_worked_example() {
    let v = run_json(&[&["centralizer"], EXAMPLE].concat());
    assert_eq!(v["dim"], 4);
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
}

const TWO_BLOCK: &[&str] = &[
    "--p",
    "5",
    "--n",
    "6",
    "--a",
    "2,3,1,2,3,1",
    "--sigma",
    "(0 1 2)(3 4 5)",
];

#[test]
fn check_characteristic_refutes_two_block_line() {
    let v = run_json(
        &[
            &["check-characteristic"],
            TWO_BLOCK,
            &["--basis", "1,2,1,0,0,0"],
        ]
        .concat(),
    );
    assert_eq!(v["invariant"], true);
    assert_eq!(v["hyperinvariant"], false);
    assert_eq!(v["characteristic"], "refuted");
    assert!(v.get("witness").is_some());

    // kernels of polynomials in A are certified
    let v = run_json(&[&["check-characteristic"], EXAMPLE, &["--basis", "1,2,2,4"]].concat());
    assert_eq!(v["characteristic"], "certified");
    assert_eq!(v["hyperinvariant"], true);
}

#[test]
fn generalized_split_and_one_based_cycles() {
    let v = run_json(
        &[
            &["generalized"],
            TWO_BLOCK,
            &["--basis", "1,2,1,0,0,0;0,0,0,1,2,1"],
        ]
        .concat(),
    );
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(
        comps[0]["basis"],
        serde_json::json!([["1", "2", "1", "0", "0", "0"]])
    );
    assert_eq!(
        comps[1]["basis"],
        serde_json::json!([["0", "0", "0", "1", "2", "1"]])
    );

    let one_based = run_json(&[
        "generalized",
        "--p",
        "5",
        "--n",
        "6",
        "--a",
        "2,3,1,2,3,1",
        "--sigma",
        "(1 2 3)(4 5 6)",
        "--one-based",
        "--basis",
        "1,2,1,0,0,0;0,0,0,1,2,1",
    ]);
    assert_eq!(one_based, v);
}

#[test]
fn generalized_rejects_non_invariant_subspace() {
    let out = run(&[&["generalized"], TWO_BLOCK, &["--basis", "1,0,0,0,0,0"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invariant"));
}

#[test]
fn coprime_blocks_report() {
    let v = run_json(&["coprime-blocks", "--p", "5", "--blocks", "3,0,1;2,0,1"]);
    assert_eq!(v["centralizer_dim"], 4);
    assert_eq!(v["offdiag_kernels"][0]["dim"], 0);
    let out = run(&["coprime-blocks", "--p", "5", "--blocks", "3,0,1;3,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paper_examples_pass_with_noted_discrepancies() {
    let out = run(&["paper-examples"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS"));
    assert!(stdout.contains("ex1.displayed_basis"));

    let v = run_json(&["paper-examples", "--json"]);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 14);
    assert!(checks.iter().all(|c| c["pass"] == true));
    let discrepancies = v["discrepancies"].as_array().unwrap();
    assert_eq!(discrepancies.len(), 2);
}

#[test]
fn output_is_deterministic() {
    let args: Vec<&str> = [&["distance"], EXAMPLE, &["--select", "0,1"]].concat();
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let args: Vec<&str> = [
        &["check-characteristic"],
        TWO_BLOCK,
        &["--basis", "1,2,1,0,0,0"],
    ]
    .concat();
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn code_record_reparses_bit_identically() {
    let record = run_json(&[&["distance"], EXAMPLE, &["--select", "0,1"]].concat());
    let code = monocode::json::code_from_json(&record).unwrap();
    assert_eq!(monocode::json::code_to_json(&code), record);
}

#[test]
fn parse_errors_name_the_token() {
    let out = run(&["factor", "--p", "5", "--n", "4", "--a", "3,9,3,1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("\"9\""), "stderr: {stderr}");

    let out = run(&["factor", "--p", "5", "--n", "4", "--a", "3,4,3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["factor", "--p", "6", "--n", "2", "--a", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}
