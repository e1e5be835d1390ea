use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn agpir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agpir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_points_reference_curves() {
    let o = agpir(&["count-points", "--p", "43", "--a", "0", "--b", "9"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "points=57 Z=0");
    let o = agpir(&["count-points", "--p", "127", "--a", "1", "--b", "33"]);
    assert_eq!(stdout(&o).trim(), "points=150 Z=1");
}

#[test]
fn count_points_rejects_singular_curve() {
    let o = agpir(&["count-points", "--p", "43", "--a", "0", "--b", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn find_curve_json() {
    let o = agpir(&["find-curve", "--p", "43", "--min-points", "57"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"p": 43, "a": 0, "b": 9, "points": 57, "Z": 0}));
}

#[test]
fn build_simulate_verify() {
    let dir = TempDir::new().unwrap();
    let scheme = dir.path().join("scheme.json");
    let o = agpir(&[
        "build", "--p", "43", "--genus", "1", "--x", "16", "--t", "16", "--a", "0", "--b", "9",
        "--seed", "3", "--out", path_str(&scheme),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("L=7 N=47"));
    let desc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&scheme).unwrap()).unwrap();
    assert_eq!(desc["N"], 47);
    assert_eq!(desc["curve"], serde_json::json!({"a": 0, "b": 9}));

    let t1 = dir.path().join("t1.json");
    let t2 = dir.path().join("t2.json");
    for t in [&t1, &t2] {
        let o = agpir(&[
            "simulate", "--scheme", path_str(&scheme), "--files", "3", "--theta", "2", "--seed",
            "9", "--out", path_str(t),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&t1).unwrap();
    assert_eq!(a, std::fs::read(&t2).unwrap());
    let tr: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(tr["decoded"], tr["database"][2]);
    assert_eq!(tr["servers"].as_array().unwrap().len(), 47);

    let o = agpir(&["verify", "--scheme", path_str(&scheme), "--subsets", "sample:200:1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verification passed"));
}

#[test]
fn build_even_l_genus1_warns() {
    let dir = TempDir::new().unwrap();
    let scheme = dir.path().join("s.json");
    let o = agpir(&[
        "build", "--p", "43", "--genus", "1", "--x", "16", "--t", "16", "--l", "8", "--out",
        path_str(&scheme),
    ]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("L=7"));
}

#[test]
fn build_infeasible_exits_nonzero() {
    let dir = TempDir::new().unwrap();
    let o = agpir(&[
        "build", "--p", "43", "--genus", "0", "--x", "16", "--t", "16", "--l", "6", "--out",
        path_str(&dir.path().join("s.json")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("44 < 2L + X + T + 1 = 45"));
}

#[test]
fn verify_exhaustive_oracle_tiny() {
    let dir = TempDir::new().unwrap();
    let scheme = dir.path().join("s.json");
    let o = agpir(&[
        "build", "--p", "5", "--genus", "0", "--x", "1", "--t", "1", "--out", path_str(&scheme),
    ]);
    assert!(o.status.success());
    let o = agpir(&["verify", "--scheme", path_str(&scheme), "--exhaustive-oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS privacy oracle"));
    assert!(out.contains("PASS security oracle"));
}

#[test]
fn verify_rejects_tampered_descriptor() {
    let dir = TempDir::new().unwrap();
    let scheme = dir.path().join("s.json");
    agpir(&[
        "build", "--p", "13", "--genus", "0", "--x", "2", "--t", "2", "--out", path_str(&scheme),
    ]);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&scheme).unwrap()).unwrap();
    v["eval_points"][0] = serde_json::json!([12]);
    std::fs::write(&scheme, v.to_string()).unwrap();
    let o = agpir(&["verify", "--scheme", path_str(&scheme)]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn sweep_csv() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let o = agpir(&[
        "sweep", "--p", "127", "--xt-min", "1", "--xt-max", "70", "--preset", "fig1-127",
        "--out", path_str(&csv_path),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("crossover X=T=26"));
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers.join(","),
        "q,genus,X,T,L,N,rate_num,rate_den,rate,curve_a,curve_b,points,Z,feasible"
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 140);
    let g1_26 = rows.iter().find(|r| &r[1] == "1" && &r[2] == "26").unwrap();
    assert_eq!((&g1_26[4], &g1_26[5], &g1_26[8]), ("43", "103", "0.4175"));
    assert_eq!((&g1_26[11], &g1_26[12]), ("150", "1"));

    let again = dir.path().join("again.csv");
    agpir(&[
        "sweep", "--p", "127", "--xt-min", "1", "--xt-max", "70", "--a", "1", "--b", "33",
        "--out", path_str(&again),
    ]);
    assert_eq!(std::fs::read(&csv_path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn bad_subsets_flag() {
    let o = agpir(&["verify", "--scheme", "x.json", "--subsets", "some"]);
    assert_eq!(o.status.code(), Some(2));
}
