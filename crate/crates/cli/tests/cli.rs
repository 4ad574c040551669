use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-k0"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Parses stdout as JSON with the timing field removed.
fn json(out: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    if let Value::Object(map) = &mut v {
        map.remove("elapsed_ms");
    }
    v
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn k0_all_routes_agree_at_30() {
    let out = run(&["k0", "--n", "30", "--j", "3", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], Value::Bool(true));
    let routes = v["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 3);
    for r in routes {
        assert_eq!(r["torsion"].to_string(), "[31,3069]");
        assert_eq!(r["order"].to_string(), "95139");
    }
}

#[test]
fn k0_infinite_and_trivial() {
    let v = json(&run(&["k0", "--n", "6", "--j", "5"]));
    assert_eq!(v["order"], "infinite");
    assert!(v["free_rank"].as_u64().unwrap() >= 1);

    let v = json(&run(&["k0", "--n", "3", "--j", "3"]));
    assert_eq!(v["torsion"].to_string(), "[]");
    assert_eq!(v["free_rank"].to_string(), "0");
    assert_eq!(v["order"].to_string(), "1");
}

#[test]
fn k0_json_is_deterministic() {
    let args = ["k0", "--n", "25", "--j", "4", "--method", "reduced"];
    assert_eq!(json(&run(&args)), json(&run(&args)));
}

#[test]
fn k0_from_graph_file() {
    let f = temp_file(r#"{"n": 1, "adjacency": [[5]]}"#);
    let v = json(&run(&["k0", "--graph", f.path().to_str().unwrap()]));
    assert_eq!(v["torsion"].to_string(), "[4]");
    assert_eq!(v["j"], Value::Null);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["k0", "--n", "2", "--j", "1"][..],
        &["k0", "--n", "5", "--j", "4", "--method", "closed"],
        &["k0", "--n", "2001", "--j", "3"],
        &["k0", "--n", "5"],
        &["haselgrove", "--k", "3", "--from", "0", "--to", "4"],
        &["sequence", "--name", "fibonacci", "--from", "-1", "--to", "3"],
        &["snf", "--input", "/nonexistent/matrix.txt"],
        &["realize", "--n", "5", "--j", "4"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn haselgrove_row() {
    let v = json(&run(&["haselgrove", "--k", "3", "--from", "1", "--to", "15"]));
    assert_eq!(
        v["values"].to_string(),
        "[1,3,1,3,11,9,8,27,37,33,67,117,131,192,341]"
    );
}

#[test]
fn sequence_rows() {
    let v = json(&run(&["sequence", "--name", "narayana", "--from", "-3", "--to", "5"]));
    assert_eq!(v["values"].to_string(), "[0,1,0,0,1,1,1,2,3]");
    let v = json(&run(&["sequence", "--name", "d3", "--from", "1", "--to", "18"]));
    assert_eq!(v["values"].to_string(), "[1,1,1,1,1,1,2,3,1,1,1,1,1,4,1,3,1,1]");
    let v = json(&run(&["sequence", "--name", "dprime3", "--from", "7", "--to", "8"]));
    assert_eq!(v["values"].to_string(), "[4,9]");
}

#[test]
fn snf_files() {
    let f = temp_file("3 3\n1 0 0\n0 1 0\n0 0 1\n");
    let v = json(&run(&["snf", "--input", f.path().to_str().unwrap()]));
    assert_eq!(v["factors"].to_string(), "[1,1,1]");

    let m = cayley_k0::k_theory::cayley_k0_matrix(7, 3).unwrap();
    let f = temp_file(&format!("# C_7^3\n{}", cayley_k0::linalg::write_matrix(&m)));
    let v = json(&run(&["snf", "--input", f.path().to_str().unwrap()]));
    assert_eq!(v["factors"].to_string(), "[1,1,1,1,2,2,2]");

    let f = temp_file("2 2\n2 4\n6 8\n");
    let v = json(&run(&["snf", "--input", f.path().to_str().unwrap(), "--divisors", "--transforms"]));
    assert_eq!(v["factors"].to_string(), "[2,4]");
    assert_eq!(v["divisors"].to_string(), "[1,2,8]");
    assert!(v["u"].is_array() && v["v"].is_array());

    let f = temp_file("2 2\n1 2\n3\n");
    assert_eq!(run(&["snf", "--input", f.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn realize_loop_counts() {
    for (n, loops) in [("3", [2, 3, 3, 3]), ("4", [2, 3, 3, 5]), ("7", [2, 4, 4, 4])] {
        let out = run(&["realize", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let adjacency = v["adjacency"].as_array().unwrap();
        let diag: Vec<u64> = (0..4).map(|i| adjacency[i][i].as_u64().unwrap()).collect();
        assert_eq!(diag, loops, "n = {n}");
    }
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "reduction", "--n-max", "30", "--j-max", "5"][..],
        &["verify", "--suite", "zeros", "--n-max", "24"],
        &["verify", "--suite", "j2", "--n-max", "40"],
        &["verify", "--suite", "j3", "--n-max", "40"],
        &["verify", "--suite", "monoid"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["passed"], Value::Bool(true));
    }
}

#[test]
fn verify_output_independent_of_threads() {
    let args = ["verify", "--suite", "realization", "--n-max", "12"];
    let one = Command::new(env!("CARGO_BIN_EXE_cayley-k0"))
        .args(args)
        .env("CAYLEY_K0_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_cayley-k0"))
        .args(args)
        .env("CAYLEY_K0_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), many.status.code());
    assert_eq!(json(&one), json(&many));
}

#[test]
fn verify_realization_reports_sign_failures() {
    let out = run(&["verify", "--suite", "realization", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 8);
    for f in failures {
        assert!(f["detail"].as_str().unwrap().contains("determinant signs differ"));
    }
}
