use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bernvand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bernvand"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn values(line: &str) -> Vec<f64> {
    line.split(',').skip(1).map(|v| v.parse().unwrap()).collect()
}

#[test]
fn conditioning_first_row_has_closed_form_values() {
    let out = bernvand(&["conditioning", "--nmax", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k2LD,ub,k2V");
    assert_eq!(lines.len(), 4);
    let row = values(lines[1]);
    assert!((row[0] - 3f64.sqrt()).abs() < 1e-12);
    assert!((row[1] - 4.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!((row[2] - 1.0).abs() < 1e-12);
}

#[test]
fn interval_experiments_write_header_and_rows() {
    let dir = TempDir::new().unwrap();
    for cmd in ["equispaced", "random"] {
        let path = dir.path().join(format!("{cmd}.csv"));
        let out = bernvand(&[cmd, "--nmax", "5", "--seed", "3", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# newton"));
        assert!(lines[1].starts_with("n,BezoutL2err,DFTL2err,LUL2err"));
        assert_eq!(lines.len(), 2 + 5);
        for line in &lines[2..] {
            assert_eq!(values(line).len(), 9);
        }
    }
}

#[test]
fn block_lu_rows_cover_both_dimensions() {
    let out = bernvand(&["blocklu", "--nmax", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,2dL2err,3dL2err,2dMerr,3dMerr,2dres,3dres");
    assert_eq!(lines.len(), 4);
}

#[test]
fn seeds_change_random_node_results() {
    let a = stdout(&bernvand(&["random", "--nmax", "4", "--seed", "1"]));
    let b = stdout(&bernvand(&["random", "--nmax", "4", "--seed", "2"]));
    let again = stdout(&bernvand(&["random", "--nmax", "4", "--seed", "1"]));
    assert_ne!(a, b);
    assert_eq!(a, again);
}

#[test]
fn solve_prints_seventeen_significant_digits() {
    let dir = TempDir::new().unwrap();
    let rhs = write(&dir, "rhs.txt", "0.25\n-1.5\n");
    for method in ["lu", "bezout", "dft", "dft-eq"] {
        let out = bernvand(&[
            "solve",
            "--n",
            "1",
            "--method",
            method,
            "--nodes",
            "equispaced",
            "--rhs",
            &rhs,
        ]);
        assert!(out.status.success(), "{method}");
        let text = stdout(&out);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let parsed: Vec<f64> = lines.iter().map(|l| l.parse().unwrap()).collect();
        assert!((parsed[0] - 0.25).abs() < 1e-15 && (parsed[1] + 1.5).abs() < 1e-15);
        let mantissa = lines[0].split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    }
}

#[test]
fn solve_accepts_node_file() {
    let dir = TempDir::new().unwrap();
    let nodes = write(&dir, "nodes.txt", "0.1\n0.5\n0.8\n");
    // p(x) = x^2 sampled at the nodes has Bernstein coefficients (0, 0, 1).
    let rhs = write(&dir, "rhs.txt", "0.01\n0.25\n0.64\n");
    let out = bernvand(&[
        "solve", "--n", "2", "--method", "bezout", "--nodes", &nodes, "--rhs", &rhs,
    ]);
    assert!(out.status.success());
    let c: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    for (got, want) in c.iter().zip([0.0, 0.0, 1.0]) {
        assert!((got - want).abs() < 1e-13);
    }
}

#[test]
fn malformed_rhs_reports_line_and_exits_two() {
    let dir = TempDir::new().unwrap();
    let rhs = write(&dir, "rhs.txt", "1.0\nabc\n");
    let out = bernvand(&[
        "solve",
        "--n",
        "1",
        "--method",
        "lu",
        "--nodes",
        "equispaced",
        "--rhs",
        &rhs,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn equispaced_method_rejects_other_nodes() {
    let dir = TempDir::new().unwrap();
    let rhs = write(&dir, "rhs.txt", "1\n2\n3\n");
    let out = bernvand(&[
        "solve",
        "--n",
        "2",
        "--method",
        "dft-eq",
        "--nodes",
        "stratified",
        "--rhs",
        &rhs,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_rhs_file_exits_one() {
    let missing = Path::new("/nonexistent/rhs.txt");
    let out = bernvand(&[
        "solve",
        "--n",
        "1",
        "--method",
        "lu",
        "--nodes",
        "equispaced",
        "--rhs",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zero_nmax_is_rejected() {
    let out = bernvand(&["conditioning", "--nmax", "0"]);
    assert!(!out.status.success());
}
