use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn tetra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(args)
        .env_remove("TETRA_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compute_rank_one() {
    let out = tetra(&["compute", "--rvec", "0,0,0,1", "--order", "2", "--mode", "k"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema"], "tetra.compute/1");
    assert_eq!(doc["meta"]["rvec"], "0,0,0,1");
    assert_eq!(doc["meta"]["point"]["kind"], "k");
    for route in ["localization", "closed", "factorized"] {
        assert_eq!(doc["series"][route][0], "1");
        assert_eq!(doc["series"][route], doc["series"]["localization"]);
    }
}

#[test]
fn compute_balanced_rank_vanishes() {
    let doc = json(&tetra(&["compute", "--rvec", "1,1,1,1", "--order", "3"]));
    let loc = doc["series"]["localization"].as_array().unwrap();
    assert_eq!(loc.len(), 4);
    assert!(loc[1..].iter().all(|c| c == "0"));
}

#[test]
fn compute_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = tetra(&["compute", "--rvec", "1,1,0,0", "--order", "2", "--seed", "9", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn compute_other_modes() {
    let doc = json(&tetra(&["compute", "--mode", "coh", "--order", "2"]));
    assert_eq!(doc["series"]["localization"], doc["series"]["closed"]);
    assert_eq!(doc["meta"]["point"]["kind"], "coh");
    let doc = json(&tetra(&["compute", "--mode", "elliptic", "--order", "1", "--p-order", "2"]));
    let rows = doc["series"]["localization"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], serde_json::json!(["1", "0", "0"]));
    assert_eq!(doc["meta"]["p_order"], 2);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "main", "--rvec", "1,1,0,0", "--order", "3"],
        vec!["verify", "--suite", "signs", "--rvec", "1,0,1,0", "--order", "3", "--points", "1"],
        vec!["verify", "--suite", "euler", "--r", "1", "--order", "6"],
        vec!["verify", "--suite", "framing", "--rvec", "0,0,0,2", "--order", "2"],
        vec!["verify", "--suite", "kappa", "--r", "3", "--order", "6", "--points", "2"],
        vec!["verify", "--suite", "main", "--mode", "coh", "--rvec", "1,1,0,0", "--order", "2"],
    ] {
        let out = tetra(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let doc = json(&out);
        assert_eq!(doc["schema"], "tetra.verify/1");
        assert_eq!(doc["passed"], true);
    }
}

#[test]
fn verify_all_on_small_input() {
    let out = tetra(&["verify", "--suite", "all", "--rvec", "1,0,0,0", "--order", "2", "--points", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"].as_array().unwrap().len(), 8);
}

#[test]
fn elliptic_framing_is_informational() {
    let out = tetra(&[
        "verify", "--suite", "framing", "--mode", "elliptic", "--rvec", "0,0,0,2", "--order", "1", "--p-order", "1",
        "--framings", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["reports"][0]["informational"], true);
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        vec!["compute", "--rvec", "1,2,3"],
        vec!["compute", "--mode", "k", "--p-order", "2"],
        vec!["verify", "--framings", "1", "--suite", "framing"],
        vec!["verify", "--points", "0"],
        vec!["compute", "--mode", "bogus"],
    ] {
        assert_eq!(tetra(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn enumerate_writes_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let out = tetra(&["enumerate", "--order", "4", "--cache", c]);
    assert!(out.status.success());
    let mut counts = Vec::new();
    for n in 0..=4 {
        let doc: Value = serde_json::from_str(&fs::read_to_string(cache.join(format!("plane_partitions_{n:03}.json"))).unwrap()).unwrap();
        counts.push(doc["count"].as_u64().unwrap());
        assert_eq!(doc["n"], n);
    }
    assert_eq!(counts, vec![1, 1, 3, 6, 13]);
    let before = fs::read(cache.join("plane_partitions_004.json")).unwrap();
    assert!(tetra(&["enumerate", "--order", "4", "--cache", c]).status.success());
    assert_eq!(fs::read(cache.join("plane_partitions_004.json")).unwrap(), before);

    // the cache feeds compute
    let out = tetra(&["compute", "--rvec", "0,0,1,0", "--order", "4", "--cache", c]);
    assert!(out.status.success());
}

#[test]
fn enumerate_order_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = tetra(&["enumerate", "--order", "0", "--cache", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn env_overrides_cache_flag() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("env");
    let from_flag = dir.path().join("flag");
    let out = Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(["enumerate", "--order", "1", "--cache", from_flag.to_str().unwrap()])
        .env("TETRA_CACHE", &from_env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(from_env.join("plane_partitions_001.json").exists());
    assert!(!from_flag.exists());
}

#[test]
fn unwritable_cache_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    fs::write(&file, "x").unwrap();
    let out = tetra(&["enumerate", "--order", "1", "--cache", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn corrupt_cache_is_invalid_configuration() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("plane_partitions_001.json"), r#"{"n":1,"count":5,"partitions":[]}"#).unwrap();
    let out = tetra(&["compute", "--order", "1", "--cache", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
