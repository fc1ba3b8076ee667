use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splinezero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn conjecture_a2() {
    let o = run(&["conjecture", "--vectors", "1,0;1,1;0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|Ω| = 7"));
    assert!(out.contains("det = 1/64"));
    assert!(out.contains("unimodular: yes"));
    assert!(out.contains("invertible: yes"));
}

#[test]
fn conjecture_b2_is_data_not_failure() {
    let o = run(&["conjecture", "--vectors", "1,0;1,1;0,1;-1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("det = 0\n"));
    assert!(out.contains("unimodular: no"));
    assert!(out.contains("invertible: NO"));
}

#[test]
fn conjecture_json() {
    let o = run(&["conjecture", "--vectors", "1;1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["determinant"], "1/4");
    assert_eq!(v["invertible"], true);
}

#[test]
fn bspline_and_boxspline_agree() {
    let o = run(&["bspline", "--m", "2", "--eval", "3/2"]);
    assert!(stdout(&o).contains("B_2(3/2) = 3/4"));
    let o = run(&["boxspline", "--vectors", "1;1;1", "--eval", "3/2"]);
    assert_eq!(stdout(&o).trim(), "3/4");
    let o = run(&["bspline", "--m", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["knots"], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn zeros_and_extend_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("zigzag.json");
    // Degree one, +1 at 0, -1 at 1, +1 at 2.
    fs::write(
        &input,
        r#"{"degree":1,"knots":["0","1","2"],"pieces":[["1","-2"],["1","-2"],["-3","2"],["-3","2"]]}"#,
    )
    .unwrap();
    let o = run(&["zeros", "--in", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("Z = 2 on [0, 2]"));

    let o = run(&["zeros", "--in", input.to_str().unwrap(), "--from", "1/4", "--to", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["Z"], 1);
    assert_eq!(v["bound"], 2);

    let out = dir.path().join("extended.json");
    let o = run(&["extend", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["zeros", "--in", out.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["from"], "-1");
    assert_eq!(v["to"], "3");
}

#[test]
fn corrupted_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("truncated.json", r#"{"degree":1,"knots":["0","1"],"pie"#),
        // Jump in value at the knot 1: not continuous.
        ("broken.json", r#"{"degree":1,"knots":["0","1"],"pieces":[["0"],["0","1"],["5"]]}"#),
        ("noncanonical.json", r#"{"degree":1,"knots":["0","2/2"],"pieces":[[],["0","1"],["1"]]}"#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let o = run(&["zeros", "--in", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = run(&["zeros", "--in", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["conjecture", "--vectors", "1,1;2,2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--kind", "nope", "--m", "2", "--knots", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--kind", "rolle", "--m", "1", "--knots", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bspline", "--m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bspline"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify", "--kind", "theorem9", "--m", "3", "--knots", "6", "--trials", "200", "--seed", "42", "--json",
        "--no-timing",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["trials"], 200);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["bound"], 8);
    assert_eq!(v["elapsed_ms"], 0);
    assert!(v["max_Z"].as_u64().unwrap() <= 8);
}

#[test]
fn verify_degree_one_reports_tight_witness() {
    let o = run(&["verify", "--kind", "theorem9", "--m", "1", "--knots", "4", "--trials", "20", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_Z"], 4);
    assert_eq!(v["witnesses"][0]["knots"], serde_json::json!(["0", "1", "2", "3", "4"]));
}
