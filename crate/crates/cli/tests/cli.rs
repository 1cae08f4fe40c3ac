use std::process::{Command, Output};

use serde_json::Value;

fn slgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slgeo")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn payload(args: &[&str]) -> Value {
    let v = json_of(&slgeo(args));
    assert_eq!(v["schema_version"], "slgeo/1");
    assert_eq!(v["command"], args[0]);
    v["payload"].clone()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn exp_on_the_axis() {
    let p = payload(&["exp", "--problem", "1", "--phi0", "0", "--c", "5", "--t", "2"]);
    assert!(f(&p["point"]["x"]).abs() < 1e-15);
    assert!((f(&p["point"]["y"]) - 2.0).abs() < 1e-15);
    assert!(f(&p["point"]["z"]).abs() < 1e-15);
}

#[test]
fn exp_samples_as_csv() {
    let out = slgeo(&["exp", "--problem", "1", "--phi0", "1", "--c", "0", "--t", "1", "--samples", "11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x,y,z");
    assert_eq!(lines.len(), 12);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
}

#[test]
fn exp_beyond_the_domain_exits_2() {
    let out = slgeo(&["exp", "--problem", "1", "--phi0", "1", "--c", "-1", "--t", "999"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "beyond_domain");
    assert!(err["error"]["message"].as_str().unwrap().contains("beyond domain bound kK/l"));
}

#[test]
fn negative_flags_parse() {
    let p = payload(&["exp", "--problem", "2", "--phi0", "-0.5", "--c", "-1", "--t", "0.3"]);
    assert!(f(&p["point"]["x"]) > 0.0);
}

#[test]
fn dist_examples() {
    let p = payload(&["dist", "--problem", "1", "--x", "0", "--y", "1", "--z", "0"]);
    assert_eq!(f(&p["distance"]), 1.0);
    let p = payload(&["dist", "--problem", "2", "--x", "0", "--y", "1", "--z", "0"]);
    assert_eq!(f(&p["distance"]), 0.0);
    assert_eq!(p["tag"], "Outside");
}

#[test]
fn synth_top_of_the_plane() {
    let p = payload(&["synth", "--problem", "1", "--x", "0", "--y", "1", "--z", "0.041666666666666664"]);
    assert_eq!(p["multiplicity"], 2);
    let plans = p["plans"].as_array().unwrap();
    assert_eq!(plans.len(), 2);
    for plan in plans {
        assert_eq!(f(&plan["switching_times"][0]), 0.5);
    }
}

#[test]
fn sphere_problem_two() {
    let p = payload(&["sphere", "--problem", "2", "--R", "1", "--n", "1000"]);
    let pts = p["points"].as_array().unwrap();
    assert_eq!(pts.len(), 1000);
    assert!(pts.iter().all(|q| q["stratum"] == "S"));
}

#[test]
fn sphere_pi_curve_rows() {
    let out = slgeo(&["sphere", "--problem", "1", "--R", "1", "--pi-curve", "--n", "50", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,y,z");
    assert_eq!(lines.len(), 51);
    assert_eq!(lines[1], "0,1,0");
}

#[test]
fn sphere_scales_by_dilation() {
    let one = payload(&["sphere", "--problem", "1", "--R", "1", "--n", "40"]);
    let two = payload(&["sphere", "--problem", "1", "--R", "2", "--n", "40"]);
    for (a, b) in one["points"].as_array().unwrap().iter().zip(two["points"].as_array().unwrap()) {
        assert_eq!(a["stratum"], b["stratum"]);
        assert!((2.0 * f(&a["x"]) - f(&b["x"])).abs() < 1e-12);
        assert!((2.0 * f(&a["y"]) - f(&b["y"])).abs() < 1e-12);
        assert!((8.0 * f(&a["z"]) - f(&b["z"])).abs() < 1e-12);
    }
}

#[test]
fn sphere_csv_columns() {
    let out = slgeo(&["sphere", "--problem", "1", "--R", "1", "--n", "30", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,y,z,stratum\n"));
    assert_eq!(text.lines().count(), 31);
}

#[test]
fn reach_examples() {
    let p = payload(&["reach", "--problem", "1", "--x", "0", "--y", "1", "--z", "0.020833333333333332"]);
    assert_eq!(p["region"], "Interior");
    assert_eq!(p["tag"], "M0");
    assert!(p["eta"].is_number());
    let p = payload(&["reach", "--problem", "2", "--x", "1", "--y", "0", "--z", "0"]);
    assert_eq!(p["region"], "Interior");
    let p = payload(&["reach", "--problem", "1", "--x", "1", "--y", "2", "--z", "0.16666666666666666"]);
    assert_eq!(p["tag"], "Boundary(S3)");
}

#[test]
fn reach_with_base() {
    let p = payload(&["reach", "--problem", "1", "--x", "0.2", "--y", "4", "--z", "-0.99", "--base", "0,3,-1"]);
    assert_eq!(p["causal_future"], true);
    assert_eq!(p["causal_past"], false);
    let out = slgeo(&["reach", "--problem", "1", "--x", "0", "--y", "1", "--z", "0", "--base", "1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_random_samples_pass() {
    for problem in ["1", "2"] {
        let out = slgeo(&["verify", "--problem", problem, "--random", "20", "--seed", "1", "--rel-tol", "0.01"]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{text}");
        assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 20);
    }
}

#[test]
fn verify_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("pts.csv");
    std::fs::write(&good, "x,y,z\n0.3,1,0.0045\n0,1,0\n").unwrap();
    let out = slgeo(&["verify", "--problem", "1", "--points", good.to_str().unwrap(), "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["payload"]["reports"].as_array().unwrap().len(), 2);

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "0.3,1\n").unwrap();
    let out = slgeo(&["verify", "--problem", "1", "--points", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[1, 2]").unwrap();
    let out = slgeo(&["verify", "--problem", "1", "--points", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["sphere", "--problem", "2", "--R", "1.5", "--n", "50"];
    let a = slgeo(&args).stdout;
    let b = slgeo(&args).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_slgeo"))
        .args(["verify", "--problem", "2", "--random", "3", "--seed", "2"])
        .env("SLGEO_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_slgeo"))
        .args(["dist", "--problem", "2", "--x", "1", "--y", "0", "--z", "0"])
        .env("SLGEO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
