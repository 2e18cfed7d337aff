use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly")).args(args).env(key, value).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn diag<'a>(v: &'a Value, tag: &str) -> &'a Value {
    v["diagnostics"].as_array().unwrap().iter().find(|d| d["tag"] == tag).unwrap_or_else(|| panic!("no {tag} diagnostic"))
}

#[test]
fn construct_families() {
    let out = run(&["construct", "ball", "-d", "2", "-m", "1", "--rho", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["lattice_points"], 5);
    assert_eq!(v["payload"]["symmetry_center"], serde_json::json!(["0", "0"]));

    let v = json(&run(&["construct", "K", "-d", "2", "-r", "2"]));
    assert_eq!(v["payload"]["lattice_points"], 15);
    assert_eq!(v["payload"]["polytope"]["vertices"].as_array().unwrap().len(), 5);

    let v = json(&run(&["construct", "H", "-d", "2", "-r", "2"]));
    assert_eq!(v["payload"]["lattice_points"], 11);
    assert_eq!(diag(&v, "Eq36")["passed"], true);

    let v = json(&run(&["construct", "B", "-d", "3", "-r", "2"]));
    assert_eq!(v["payload"]["point_count"], 13);
    let v = json(&run(&["construct", "C", "-d", "2", "-r", "2"]));
    assert_eq!(v["payload"]["point_count"], 25);
    let v = json(&run(&["construct", "Hprime", "-d", "2", "-r", "2"]));
    assert_eq!(v["payload"]["lattice_points"], 10);
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = run(&["construct", "ball", "-d", "2", "-m", "1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["status"], "invalid-input");
    let out = run(&["construct", "sphere", "-d", "2"]);
    assert_eq!(code(&out), 2);
    assert!(json(&out)["payload"]["usage"].as_str().unwrap().contains("Usage"));
    assert_eq!(code(&run(&["construct", "ball", "-d", "2", "-m", "1", "--rho", "0"])), 2);
}

#[test]
fn group_orders() {
    let simplex = write_tmp("simplex3.json", r#"{"dim":3,"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}"#);
    let v = json(&run(&["group", simplex.to_str().unwrap(), "--orthogonal"]));
    assert_eq!(v["payload"]["order"], 24);
    assert_eq!(v["payload"]["orthogonal_order"], 6);

    let cross = write_tmp("cross.json", r#"{"dim":2,"vertices":[[1,0],[0,1],[-1,0],[0,-1]]}"#);
    let v = json(&run(&["group", cross.to_str().unwrap(), "--orthogonal"]));
    assert_eq!(v["payload"]["order"], 8);
    assert_eq!(v["payload"]["orthogonal_order"], 8);
    assert_eq!(diag(&v, "Corollary1")["passed"], true);

    let square = write_tmp("square.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#);
    let v = json(&run(&["group", square.to_str().unwrap()]));
    assert_eq!(v["payload"]["order"], 8);
    assert!(diag(&v, "center")["detail"].as_str().unwrap().starts_with("non-lattice center"));
    assert_eq!(v["payload"]["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn equivalence_and_canon() {
    let p = write_tmp("p.json", r#"{"dim":2,"vertices":[[0,0],[3,0],[1,2],[0,1]]}"#);
    // (x, y) -> (x + 2y + 5, x + 3y - 1), determinant 1
    let q = write_tmp("q.json", r#"{"dim":2,"vertices":[[5,-1],[8,2],[10,6],[7,2]]}"#);
    let v = json(&run(&["equiv", p.to_str().unwrap(), q.to_str().unwrap()]));
    assert_eq!(v["payload"]["equivalent"], true);
    assert_eq!(diag(&v, "witness")["passed"], true);
    let cp = json(&run(&["canon", p.to_str().unwrap()]));
    let cq = json(&run(&["canon", q.to_str().unwrap()]));
    assert_eq!(cp["payload"]["canonical"], cq["payload"]["canonical"]);

    let tri = write_tmp("tri.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#);
    let sq = write_tmp("sq.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#);
    let v = json(&run(&["equiv", tri.to_str().unwrap(), sq.to_str().unwrap()]));
    assert_eq!(v["payload"]["equivalent"], false);
    assert_eq!(v["payload"]["invariant"], "|P|");

    let cube = write_tmp("cube.json", r#"{"dim":3,"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}"#);
    let out = run(&["equiv", tri.to_str().unwrap(), cube.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&run(&["canon", "/nonexistent/file.json"])), 2);
}

#[test]
fn family_at_feasible_width() {
    let out = run(&["theorem1", "-d", "2", "-w", "187", "--members"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let p = &v["payload"];
    assert_eq!(p["r"], 4);
    assert_eq!(p["u"], 10);
    assert_eq!(p["v_prime_count"], 3);
    assert_eq!(p["family_size"], 8);
    assert!(p["class_count"].as_u64().unwrap() >= 1);
    assert_eq!(diag(&v, "ClassBound")["passed"], true);
    let members = p["members"].as_array().unwrap();
    assert!(members.iter().all(|m| m["cardinality"] == 187));

    // two members with different subsets are inequivalent
    let a = write_tmp("m0.json", &members[0]["polytope"].to_string());
    let b = write_tmp("m1.json", &members[1]["polytope"].to_string());
    assert_ne!(members[0]["canonical"], members[1]["canonical"]);
    let e = json(&run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]));
    assert_eq!(e["payload"]["equivalent"], false);
    let c = json(&run(&["canon", a.to_str().unwrap()]));
    assert_eq!(c["payload"]["canonical"], members[0]["canonical"]);
}

#[test]
fn family_failures_name_the_equation() {
    let out = run(&["theorem1", "-d", "2", "-w", "7"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["status"], "construction-failure");
    assert_eq!(v["payload"]["equation"], "Eq27");
    assert_eq!(v["diagnostics"][0]["tag"], "Eq27");

    let v = json(&run(&["theorem1", "-d", "2", "-w", "31", "--subsets", "all"]));
    assert_eq!(v["payload"]["equation"], "Eq36");
    assert_eq!(v["diagnostics"][0]["passed"], false);

    assert_eq!(code(&run(&["theorem1", "-d", "2", "-w", "40"])), 2);
}

#[test]
fn family_sampling_is_deterministic() {
    let args = ["theorem1", "-d", "2", "-w", "357", "--subsets", "sample", "--limit", "5", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["payload"]["family_size"], 5);
}

#[test]
fn census_tables() {
    let out = run(&["census", "v", "--range", "1..6", "--out", "csv"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "statistic,value,constraint,box,stable,class_count,log_count,cube_root,ratio");
    assert_eq!(lines.len(), 7);
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        assert_eq!(f[4], "true");
        assert!(f[5].parse::<u64>().unwrap() > 0);
    }

    let v = json(&run(&["census", "kappa-star", "--range", "5..13", "--odd-only"]));
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["value"].as_i64().unwrap()).collect::<Vec<_>>(), [5, 7, 9, 11, 13]);
    assert!(rows.iter().all(|r| r["class_count"].as_u64().unwrap() >= 1));

    let v = json(&run(&["census", "kappa-star", "--range", "4..4"]));
    assert_eq!(v["payload"]["rows"][0]["class_count"], 0);
    assert_eq!(v["payload"]["rows"][0]["log_count"], Value::Null);
}

#[test]
fn census_resource_cap_keeps_partial_rows() {
    let out = run_env(&["census", "kappa", "--range", "3..20", "--out", "csv"], "LATPOLY_MAX_POINTS", "150");
    assert_eq!(code(&out), 4);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().count() >= 2);
    assert!(csv.starts_with("statistic,"));
    let out = run_env(&["census", "kappa", "--range", "3..20"], "LATPOLY_MAX_POINTS", "150");
    let v = json(&out);
    assert_eq!(v["status"], "resource-cap");
    assert!(!v["payload"]["partial"]["rows"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["census", "kappa-prime", "--range", "4..7"][..],
        &["construct", "Q", "-d", "3", "-r", "2"][..],
        &["theorem1", "-d", "2", "-w", "191"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
