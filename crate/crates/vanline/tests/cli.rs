use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn vanline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vanline")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vanline-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["checkName"] == name).and_then(|c| c["status"].as_str()).unwrap_or("missing")
}

#[test]
fn run_all_report_shape() {
    let o = vanline(&["run-all"]);
    let r = json_of(&o);
    assert_eq!(r["schemaVersion"], 1);
    let checks = r["checks"].as_array().unwrap();
    let pass = checks.iter().filter(|c| c["status"] == "pass").count();
    let flagged: Vec<&str> = checks.iter().filter(|c| c["status"] == "flagged").map(|c| c["checkName"].as_str().unwrap()).collect();
    assert!(pass >= 25, "{pass} passes");
    assert_eq!(flagged, ["chainlink.meridianQuotient", "bps.chiDisplay", "dilog.volumeSign"]);
    for c in checks {
        for key in ["checkName", "paperCitation", "status", "details", "elapsedMillis"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
        assert_eq!(c["elapsedMillis"], 0);
    }
    let mut names: Vec<&str> = checks.iter().map(|c| c["checkName"].as_str().unwrap()).collect();
    let n = names.len();
    names.dedup();
    assert_eq!(names.len(), n, "duplicate check names");
    // the sign of the horizontality identity does not come out as stated
    assert_eq!(status_of(&r, "vshs.horizontality"), "fail");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn run_all_is_byte_identical() {
    let (a, b) = (vanline(&["run-all"]), vanline(&["run-all"]));
    assert_eq!(a.stdout, b.stdout);
    let md1 = vanline(&["run-all", "--markdown"]);
    let md2 = vanline(&["--markdown", "run-all"]);
    assert_eq!(md1.stdout, md2.stdout);
    assert!(String::from_utf8_lossy(&md1.stdout).starts_with("# Verification report"));
}

#[test]
fn out_flag_writes_file() {
    let dir = scratch("out");
    let path = dir.join("report.json");
    let o = vanline(&["dilog", "volumes", "--out", path.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(status_of(&r, "dilog.volumeSign"), "flagged");
}

#[test]
fn truncated_config_still_passes_bps() {
    let dir = scratch("cfg2");
    let cfg = dir.join("config.json");
    fs::write(&cfg, r#"{"truncationOrder": 2, "floatTolerance": 1e-9}"#).unwrap();
    let o = vanline(&["bps", "check-paper-values", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    let d = &r["checks"][0]["details"];
    assert_eq!(d["order"], 2);
    assert_eq!(d["nOverSqrtM3"].as_object().unwrap().len(), 2);
}

#[test]
fn malformed_config_exits_2() {
    let dir = scratch("badcfg");
    for (i, text) in ["{", r#"{"truncationOrder": -1}"#, r#"{"unknownKey": 3}"#, r#"{"floatTolerance": 0}"#].iter().enumerate() {
        let cfg = dir.join(format!("c{i}.json"));
        fs::write(&cfg, text).unwrap();
        let o = vanline(&["run-all", "--config", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(o.stdout.is_empty());
        let err = String::from_utf8_lossy(&o.stderr).to_string();
        assert!(err.starts_with("error:") && err.contains(&format!("c{i}.json")), "{err}");
    }
    assert_eq!(vanline(&["run-all", "--config", "/nonexistent/config.json"]).status.code(), Some(2));
}

#[test]
fn corrupted_floer_data_names_file() {
    let dir = scratch("floer");
    fs::write(dir.join("floer_incidence.json"), "{\"summands\": [").unwrap();
    let cfg = dir.join("config.json");
    fs::write(&cfg, serde_json::json!({"dataDir": dir}).to_string()).unwrap();
    let o = vanline(&["run-all", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = json_of(&o);
    assert_eq!(status_of(&r, "floer.e2"), "fail");
    let err = r["checks"].as_array().unwrap().iter().find(|c| c["checkName"] == "floer.e2").unwrap()["details"]["error"].as_str().unwrap().to_string();
    assert!(err.contains("floer_incidence.json"), "{err}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("floer_incidence.json"));
}

#[test]
fn missing_floer_data_in_data_dir_fails() {
    let dir = scratch("floer-missing");
    let cfg = dir.join("config.json");
    fs::write(&cfg, serde_json::json!({"dataDir": dir}).to_string()).unwrap();
    let o = vanline(&["floer", "verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn module_subcommands() {
    for args in [&["dwork", "verify"][..], &["dwork", "orbits"], &["dwork", "boundary"], &["chainlink", "verify"], &["locsys", "verify-vg"], &["floer", "verify"], &["dilog", "volumes"], &["tropical"]] {
        let o = vanline(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json_of(&o)["schemaVersion"], 1);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(vanline(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(vanline(&["locsys", "extend", "--mu0", "omega"]).status.code(), Some(2));
    assert_eq!(vanline(&["locsys", "extend", "--mu0", "omega3", "--lambda0", "1"]).status.code(), Some(2));
    assert_eq!(vanline(&["bps", "invert", "--input", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn locsys_extend_and_residues() {
    let o = vanline(&["locsys", "extend", "--mu0", "omega", "--lambda0", "omega"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    assert!(sols[0]["residues"].as_array().unwrap().iter().all(|r| r == "0"));

    let dir = scratch("tuple");
    let path = dir.join("tuple.json");
    fs::write(&path, sols[0]["tuple"].to_string()).unwrap();
    let o = vanline(&["locsys", "residues", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["unobstructed"], true);

    let o = vanline(&["locsys", "extend", "--mu0=-1/2", "--lambda0=-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert!(v["solutions"].as_array().unwrap().is_empty());
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn bps_invert_and_vshs_check() {
    let dir = scratch("bps");
    let path = dir.join("table.json");
    fs::write(&path, r#"{"1": [280000, 1], "2": ["22296200000", "3"]}"#).unwrap();
    let o = vanline(&["bps", "invert", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["nOverSqrtM3"]["2"], serde_json::json!([22296410000u64, 3]));
    assert!(v["outsideRing"].as_array().unwrap().is_empty());

    let o = vanline(&["vshs", "check", "--psi", path.to_str().unwrap(), "--order", "2"]);
    let v = json_of(&o);
    assert_eq!(v["componentsOutsideE1Vanish"], true);
    assert_eq!(v["e1EqualsPlusTheta2Psi"], true);
    assert_eq!(v["transversalAtHalf"], true);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tropical_curve_input() {
    let dir = scratch("trop");
    let good = dir.join("v.json");
    fs::write(&good, r#"{"vertices": [[0,0,0]], "edges": [{"from":0,"rayDir":[1,0,0]},{"from":0,"rayDir":[0,1,0]},{"from":0,"rayDir":[0,0,1]},{"from":0,"rayDir":[-1,-1,-1]}]}"#).unwrap();
    let o = vanline(&["tropical", "--input", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["balanced"], true);
    let bad = dir.join("w.json");
    fs::write(&bad, r#"{"vertices": [[0,0,0]], "edges": [{"from":0,"rayDir":[1,0,0]},{"from":0,"rayDir":[0,1,0]}]}"#).unwrap();
    let o = vanline(&["tropical", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["balanced"], false);
}
