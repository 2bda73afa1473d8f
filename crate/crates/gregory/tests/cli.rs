use std::process::{Command, Output};

use gregory::dump::SeriesDump;
use gregory::core::series::base_series;
use serde_json::Value;

fn gregory(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gregory")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pn_table_rows() {
    let o = gregory(&["pn", "6", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,p_n,decimal"));
    assert_eq!(text.lines().last(), Some("6,3/160,0.01875"));
    let o = gregory(&["pn", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,p_n,decimal\n2,1/2,0.5\n");
    let o = gregory(&["pn", "1001"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pn_json_round_trips_through_series_dump() {
    let o = gregory(&["pn", "30", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs: Vec<(usize, String)> =
        rows.iter().map(|r| (r["n"].as_u64().unwrap() as usize, r["p_n"].as_str().unwrap().to_string())).collect();
    let dump = SeriesDump::from_pn(pairs.iter().map(|(n, p)| (*n, p.as_str()))).unwrap();
    let text = serde_json::to_string(&dump).unwrap();
    let back: SeriesDump = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_series().unwrap(), base_series(29).unwrap());
}

#[test]
fn knessl_column() {
    let o = gregory(&["-P", "30", "pn", "4", "--knessl", "--format", "jsonl"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let r: f64 = v["knessl_residual"].as_str().unwrap().parse().unwrap();
        assert!(r.abs() < 1e-28, "{line}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = gregory(&["verify", "--filter", "OLOA"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 11);
    assert!(lines.iter().all(|r| r["pass"] == Value::Bool(true)));

    let o = gregory(&["verify", "--filter", "PROP8_IN.printed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PROP8_IN.printed"));
    let first: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["errata"], Value::Bool(true));
    assert!(first["note"].as_str().unwrap().contains("residuals"));

    let o = gregory(&["verify", "--filter", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = gregory(&["-P", "19", "verify", "--filter", "OLOA"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gregory(&["-N", "99", "verify", "--filter", "OLOA"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_point() {
    let o = gregory(&["verify", "--filter", "PROP8_IN", "--params", "n=2,s=2", "--format", "json"]);
    assert!(o.status.success());
    let v: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["lhs"], "3/4");
    assert_eq!(v[0]["rhs"], "3/4");
    let o = gregory(&["verify", "--filter", "PROP8", "--params", "n=2,s=2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("constants.json");
    let cache = cache.to_str().unwrap();
    let args = ["-P", "30", "verify", "--filter", "PSI_MOM", "--format", "json"];
    let cold = gregory(&[&args[..], &["--cache", cache]].concat());
    assert!(cold.status.success());
    assert!(std::path::Path::new(cache).exists());
    let warm = gregory(&[&args[..], &["--cache", cache, "--threads", "1"]].concat());
    let plain = gregory(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, plain.stdout);
    let timed = gregory(&[&args[..], &["--timings"]].concat());
    assert!(stdout(&timed).contains("runtime_ms"));
    assert!(!stdout(&plain).contains("runtime_ms"));
}

fn stieltjes_rows(args: &[&str]) -> Vec<Value> {
    let o = gregory(&[&["-P", "20", "stieltjes", "--format", "jsonl"], args].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn value(r: &Value) -> f64 {
    r["value"].as_str().unwrap().parse().unwrap()
}

#[test]
fn stieltjes_examples() {
    let g = 0.577_215_664_901_532_9;
    let rows = stieltjes_rows(&["0", "--methods", "limit_formula,polylog_integral"]);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| (value(r) - g).abs() < 1e-15));
    let d: f64 = rows[0]["delta_polylog_integral"].as_str().unwrap().parse().unwrap();
    assert!(d < 1e-10);
    let rows = stieltjes_rows(&["0", "--a", "2", "--methods", "limit_formula"]);
    assert!((value(&rows[0]) - (g - 1.0)).abs() < 1e-15);
    let rows = stieltjes_rows(&["1", "--methods", "limit_formula,p_series"]);
    assert!(rows.iter().all(|r| (value(r) + 0.072_815_845_483_676_72).abs() < 1e-15));
    let o = gregory(&["stieltjes", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}

#[test]
fn zeta_and_integral() {
    let o = gregory(&["-P", "25", "-N", "2000", "zeta", "2", "--from-below", "--format", "jsonl"]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    assert!((value(&rows[0]) - z2).abs() < 1e-15);
    assert_eq!(rows[1]["increasing"], Value::Bool(true));
    assert!((value(&rows[1]) - z2).abs() < 1e-9);

    let o = gregory(&["-P", "30", "integral", "2", "--sigma", "-1/2", "--format", "jsonl"]);
    assert!(o.status.success());
    let row: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(row["pass"], Value::Bool(true));
    let o = gregory(&["integral", "2", "--sigma", "-1"]);
    assert_eq!(o.status.code(), Some(3));
}
