use std::process::{Command, Output};

fn macsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_first_example_text() {
    let o = macsum(&["compute", "--lambda", "3,1", "--n", "2", "--family", "macdonald", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "x1^3*x2 + (1 - t + q - q*t)/(1 - q*t)*x1^2*x2^2 + x1*x2^3"
    );
}

#[test]
fn compute_linear() {
    let o = macsum(&["compute", "--lambda", "1,0", "--n", "2", "--family", "macdonald"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x1 + x2");
}

#[test]
fn q_whittaker_is_t_zero_image() {
    let a = macsum(&["compute", "--lambda", "3,1", "--n", "2", "--family", "q-whittaker"]);
    let b = macsum(&["specialize", "--lambda", "3,1", "--n", "2", "--set", "t=0"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).trim(), "x1^3*x2 + (1 + q)*x1^2*x2^2 + x1*x2^3");
}

#[test]
fn json_and_latex_formats() {
    let o = macsum(&["compute", "--lambda", "3,1", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["terms"][1]["coeff"], "(1 - t + q - q*t)/(1 - q*t)");
    let o = macsum(&["compute", "--lambda", "3,1", "--n", "2", "--format", "latex"]);
    assert!(stdout(&o).contains("\\frac{1 - t + q - qt}{1 - qt}"), "{}", stdout(&o));
}

#[test]
fn output_is_byte_deterministic_across_thread_counts() {
    let args = ["compute", "--lambda", "3,2,1", "--n", "3", "--format", "json"];
    let a = Command::new(env!("CARGO_BIN_EXE_macsum")).args(args).env("MACSUM_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_macsum")).args(args).env("MACSUM_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let a = Command::new(env!("CARGO_BIN_EXE_macsum"))
        .args(["verify", "--suite", "hecke", "--samples", "10"])
        .env("MACSUM_THREADS", "1")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_macsum"))
        .args(["verify", "--suite", "hecke", "--samples", "10"])
        .env("MACSUM_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn nonsymmetric_f_takes_a_composition() {
    let o = macsum(&["compute", "--lambda", "1,3", "--family", "nonsym-f"]);
    assert_eq!(o.status.code(), Some(0));
    let o = macsum(&["compute", "--lambda", "1,3", "--n", "3", "--family", "nonsym-f"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(macsum(&["compute", "--lambda", "1,3", "--n", "2"]).status.code(), Some(2));
    assert_eq!(macsum(&["compute", "--lambda", "3,x"]).status.code(), Some(2));
    assert_eq!(macsum(&["compute", "--lambda", "2,1,1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(macsum(&["specialize", "--lambda", "2,1", "--set", "z=1"]).status.code(), Some(2));
    assert_eq!(macsum(&["verify", "--suite", "lemma", "--r", "9"]).status.code(), Some(2));
    assert_eq!(macsum(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_golden_passes() {
    let o = macsum(&["verify", "--suite", "golden"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 1729);
}

#[test]
fn verify_lemma_small() {
    let o = macsum(&["verify", "--suite", "lemma", "--r", "2", "--n", "2", "--samples", "2", "--summary"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn oracle_compare_agrees() {
    let o = macsum(&["oracle-compare", "--lambda", "2,1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = macsum(&["oracle-compare", "--lambda", "2,1", "--n", "2", "--variant", "jack"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn trace_check_passes_and_pole_is_input_error() {
    let o = macsum(&["trace-check", "--b", "2", "--c", "2", "--a", "1", "--bq", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = macsum(&["trace-check", "--b", "1", "--c", "1", "--a", "0", "--bq", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_reports_all_scenarios() {
    let o = macsum(&["bench", "--lambda", "3,2,1", "--n", "3", "--repetitions", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[1]["generator_applications"].as_u64() <= rows[0]["generator_applications"].as_u64());
    let o = macsum(&["bench", "--lambda", "2,1", "--max-n", "4", "--repetitions", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 3 * 3);
}
