use std::io::Write;
use std::process::{Command, Output, Stdio};

fn earring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_earring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn reduce_to_identity() {
    let out = earring(&["reduce", "1 -1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "e\n");
}

#[test]
fn reduce_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_earring"))
        .arg("reduce")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 2 -2 -1 3\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn parse_errors_exit_2() {
    let out = earring(&["reduce", "1 0 2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("token 2"), "{err}");
    assert_eq!(earring(&["report", "bogus"]).status.code(), Some(2));
    assert_eq!(earring(&["dist", "--eps", "0", "1", "2"]).status.code(), Some(2));
}

#[test]
fn osc_of_w23() {
    let out = earring(&["osc", "--gen", "1", "1 3 -1 -3 1 3 -1 -3"]);
    assert_eq!(stdout(&out), "4\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dist_prints_six_digits() {
    let out = earring(&["dist", "--eps", "1e-4", "1 3 -1 -3 1 3 -1 -3 1 3 -1 -3", "1 . -1 . 1 . -1 . 1 . -1 ."]);
    assert_eq!(stdout(&out), "0.666667\n");
}

#[test]
fn convergence_report_json() {
    let out = earring(&["report", "convergence", "--n", "3", "--kmax", "64", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    let ds: Vec<f64> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["values"]["d_w"].as_f64().unwrap())
        .collect();
    assert!(ds.windows(2).all(|w| w[1] < w[0]));
    assert!(*ds.last().unwrap() < 0.04);
}

#[test]
fn report_to_file_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.csv");
    let out = earring(&[
        "report", "product", "--nmax", "3", "--kmax", "3", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,k,expected_len,nontrivial,reduced_len,pass");
    assert_eq!(lines[1], "2,2,8,true,8,true");
    assert_eq!(lines[2], "2,3,28,true,28,true");
    assert_eq!(lines.len(), 5);
}

#[test]
fn osc_bounds_report_is_seeded() {
    let a = earring(&["report", "osc-bounds", "--nmax", "4", "--kmax", "4", "--seed", "1", "--format", "json"]);
    let b = earring(&["report", "osc-bounds", "--nmax", "4", "--kmax", "4", "--seed", "1", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 1);
}

#[test]
fn phi_json() {
    let out = earring(&["--format", "json", "phi", "--depth", "3", "1 3 -1 -3 1 3 -1 -3"]);
    assert_eq!(stdout(&out), "[\"e\",\"e\",\"1 3 -1 -3 1 3 -1 -3\"]\n");
}
