use std::fs;
use std::process::{Command, Output};

use symcurve::RakedTrigPoly;

fn symcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcurve"))
        .args(args)
        .env_remove("SYMCURVE_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = symcurve(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn phi_two() {
    let out = symcurve(&["phi", "--k", "2", "--tol", "1e-10"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 2.094395103).abs() < 1e-9);
}

#[test]
fn phi_per_split_csv() {
    let out = symcurve(&["phi", "--k", "4", "--per-split", "--out", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,m_a,m_b,L_star,extra_root,bisection_width"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("4,4,4,1.8706585323"));
}

#[test]
fn face_certificate_round_trips() {
    let v = json(&["face", "--k", "3", "--points", "0.6283,0.0,-0.6283", "--out", "json"]);
    assert_eq!(v["status"], "FACE");
    let poly: RakedTrigPoly = serde_json::from_value(v["certificate"]["poly"].clone()).unwrap();
    let again: RakedTrigPoly = serde_json::from_str(&serde_json::to_string(&poly).unwrap()).unwrap();
    assert_eq!(poly, again);
    assert!(v["certificate"]["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn degrees_flag() {
    let v = json(&["face", "--k", "2", "--points", "0,170", "--degrees", "--out", "json"]);
    assert_eq!(v["status"], "NOT_FACE");
    assert!(v["witness"].is_number());
}

#[test]
fn conjecture_even_and_odd() {
    let v = json(&["conjecture", "--k", "4", "--out", "json"]);
    assert_eq!(v["match"], true);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    let odd = symcurve(&["conjecture", "--k", "3"]);
    assert_eq!(odd.status.code(), Some(2));
}

#[test]
fn beta_table() {
    let out = symcurve(&["beta", "--kmax", "6", "--out", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,beta_k,sin2_beta_k,bound");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[2] > f[3]);
    }
}

#[test]
fn clustered_polytope() {
    let out = symcurve(&["polytope", "--k", "2", "--m", "5", "--spread", "0.05", "--dim", "1", "--out", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "dim,verified,unknown,not_face,total,bound_from_paper\n1,140,0,50,190,140\n"
    );
    let bad = symcurve(&["polytope", "--k", "2", "--m", "5", "--spread", "1.0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn angle_list_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    fs::write(&path, "[0.0, 1.5707963267948966, 3.141592653589793, 4.71238898038469]").unwrap();
    let v = json(&["polytope", "--k", "2", "--angles", path.to_str().unwrap(), "--out", "json"]);
    assert_eq!(v["verified"], 4);
    assert_eq!(v["not_face"], 2);
}

#[test]
fn roots_and_deform() {
    let f = r#"{"k":3,"c":1,"a":[0,0,-1],"b":[0,0,0]}"#;
    let roots = json(&["roots", "--poly", f, "--out", "json"]);
    assert_eq!(roots.as_array().unwrap().len(), 5);
    assert!(roots.as_array().unwrap().iter().all(|r| r["mult"] == 2));
    let g = json(&["deform", "--poly", f, "--lambda", "1.2360679774997898", "--out", "json"]);
    let g: RakedTrigPoly = serde_json::from_value(g).unwrap();
    assert_eq!(g.c(), 1.0);
}

#[test]
fn exit_codes() {
    assert_eq!(symcurve(&["phi", "--k", "0"]).status.code(), Some(2));
    assert_eq!(symcurve(&["phi"]).status.code(), Some(2));
    assert_eq!(symcurve(&["phi", "--k", "2", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(symcurve(&["roots", "--poly", "{}"]).status.code(), Some(2));
    let zero = r#"{"k":2,"c":0,"a":[0,0],"b":[0,0]}"#;
    assert_eq!(symcurve(&["roots", "--poly", zero]).status.code(), Some(1));
}

#[test]
fn output_dir_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_symcurve"))
            .args(["polytope", "--k", "3", "--uniform", "9", "--dim", "2", "--out", "json"])
            .args(["--jobs", jobs, "--output", "faces.json"])
            .env("SYMCURVE_OUTPUT_DIR", dir.path())
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(dir.path().join("faces.json")).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn repro_selected_criteria() {
    let out = symcurve(&["repro", "--criterion", "1,2,5", "--out", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    let loose = symcurve(&["repro", "--criterion", "1,2,3,4", "--tol", "1e-4"]);
    assert!(loose.status.success());
}

#[test]
fn repro_is_seed_deterministic() {
    let a = symcurve(&["repro", "--criterion", "8", "--seed", "11", "--out", "csv"]);
    let b = symcurve(&["repro", "--criterion", "8", "--seed", "11", "--out", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_golden_names_the_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.json");
    fs::write(&path, r#"{"phi_2": 2.2}"#).unwrap();
    let out = symcurve(&["repro", "--criterion", "1,2", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("criterion 1 FAILED"), "{err}");
    assert!(!err.contains("criterion 2 FAILED"));
    fs::write(&path, "not json").unwrap();
    let out = symcurve(&["repro", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(symcurve(&["repro", "--criterion", "99"]).status.code(), Some(2));
}
