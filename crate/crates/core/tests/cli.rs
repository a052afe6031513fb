//! Exit codes, flags, environment overrides and output handling of the binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gometrics"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn exit_0_for_go_and_successful_queries() {
    assert_eq!(code(&run(&["go-check", "--space", "lie:su2", "--metric", "1,1,3"])), 0);
    assert_eq!(code(&run(&["go-check", "--space", "aw:2,1", "--metric", "2,2,2,1"])), 0);
    assert_eq!(code(&run(&["go-check", "--space", "lie:g2", "--metric", "1,1,11/9,11/9,1"])), 0);
    assert_eq!(code(&run(&["roots", "g2"])), 0);
    assert_eq!(code(&run(&["roots", "a2"])), 0);
    assert_eq!(code(&run(&["einstein-check", "--space", "lie:su2", "--metric", "1,2,3"])), 0);
    assert_eq!(code(&run(&["export", "algebra", "--space", "lie:su3"])), 0);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn exit_1_when_output_cannot_be_written() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.json");
    let o = run(&["--out", bad.to_str().unwrap(), "roots", "g2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn exit_2_for_malformed_input() {
    for args in [
        vec!["go-check", "--space", "lie:su2", "--metric", "1,x,3"],
        vec!["go-check", "--space", "lie:su2", "--metric", "1,-2,3"],
        vec!["go-check", "--space", "lie:su2", "--metric", "1,2"],
        vec!["go-check", "--space", "lie:so5", "--metric", "1"],
        vec!["go-check", "--space", "aw:1,2", "--metric", "1,1,1,1"],
        vec!["go-check", "--space", "aw:2,1", "--metric", "1,1,1"],
        vec!["go-check", "--space", "aw:1,0", "--metric", "1,1,1,1"],
        vec!["go-check", "--space", "aw:1,1", "--metric", "1,1,1,1"],
        vec!["roots", "e9"],
        vec!["reproduce", "nothing"],
        vec!["export", "tables"],
        vec!["--mode", "fast", "roots", "g2"],
        vec!["--tol-feas", "-1", "go-check", "--space", "lie:su2", "--metric", "1,1,1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}

#[test]
fn exit_3_for_certified_non_go() {
    assert_eq!(code(&run(&["go-check", "--space", "aw:2,1", "--metric", "1,2,3,1", "--mode", "exact"])), 3);
    assert_eq!(code(&run(&["go-check", "--space", "lie:su2", "--metric", "1,2,3"])), 3);
    let set3 = "1.0851961,0.69929486,0.93245951,1.0225069,1";
    let o = run(&["go-check", "--space", "lie:g2", "--metric", set3]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["arithmetic"], "float");
}

#[test]
fn exit_4_for_indeterminate_float_verdicts() {
    let o = run(&["--mode", "float", "--tol-infeas", "1e9", "go-check", "--space", "lie:su2", "--metric", "1,2,3"]);
    assert_eq!(code(&o), 4);
    let v = json(&o);
    assert_eq!(v["overall"], "indeterminate");
    assert!(v["samples"].as_array().unwrap().iter().any(|s| s["verdict"] == "indeterminate"));
    // the same band is resolved exactly in auto mode
    let o = run(&["--mode", "auto", "--tol-infeas", "1e9", "go-check", "--space", "lie:su2", "--metric", "1,2,3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn exit_5_when_reproduction_does_not_match() {
    let o = run(&["--tol-einstein", "1e-15", "reproduce", "g2-einstein"]);
    assert_eq!(code(&o), 5);
    assert_eq!(code(&run(&["reproduce", "g2-einstein"])), 0);
}

#[test]
fn certificate_json_shape() {
    let o = run(&["go-check", "--space", "aw:3,1", "--metric", "1,2,3,1", "--formulation", "reduced"]);
    let v = json(&o);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["mode"], "aw_reduced");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["overall"], "non_go_certified");
    let s = &v["samples"][0];
    for key in ["X", "verdict", "residual", "smallest_nonzero_singular_value"] {
        assert!(s.get(key).is_some(), "{key}");
    }
}

#[test]
fn environment_overrides_defaults_and_flags_override_environment() {
    let args = ["go-check", "--space", "lie:su2", "--metric", "1,1,3"];
    assert_eq!(json(&run_env(&args, &[("GOMETRICS_SEED", "9")]))["seed"], 9);
    let mut with_flag = vec!["--seed", "11"];
    with_flag.extend(args);
    assert_eq!(json(&run_env(&with_flag, &[("GOMETRICS_SEED", "9")]))["seed"], 11);
    let o = run_env(&args, &[("GOMETRICS_FORMAT", "text")]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("go_confirmed_on_samples"));
    let o = run_env(&["go-check", "--space", "lie:su2", "--metric", "1,2,3"], &[("GOMETRICS_MODE", "float"), ("GOMETRICS_TOL_INFEAS", "1e9")]);
    assert_eq!(code(&o), 4);
    let o = run_env(&["reproduce", "g2-einstein"], &[("GOMETRICS_TOL_EINSTEIN", "1e-15")]);
    assert_eq!(code(&o), 5);
}

#[test]
fn seed_changes_samples() {
    let a = json(&run(&["--seed", "1", "go-check", "--space", "lie:su2", "--metric", "1,1,3"]));
    let b = json(&run(&["--seed", "2", "go-check", "--space", "lie:su2", "--metric", "1,1,3"]));
    assert_ne!(a["samples"], b["samples"]);
    let c = json(&run(&["--seed", "1", "go-check", "--space", "lie:su2", "--metric", "1,1,3"]));
    assert_eq!(a, c);
}

#[test]
fn csv_and_text_formats() {
    let o = run(&["--format", "csv", "export", "aw-brackets", "--space", "aw:2,1"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().next(), Some("i,j,k,c"));
    // [Z, X1] = (k − l) X2 on W_{2,1}
    assert!(s.lines().any(|l| l == "0,2,3,1"));
    let o = run(&["--format", "csv", "export", "g2-blocks"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().any(|l| l == "p3,p5,p4"));
    assert!(s.lines().any(|l| l == "p2,p4,"));
    let o = run(&["--format", "csv", "go-check", "--space", "lie:su2", "--metric", "1,2,3"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("sample,verdict"));
}

#[test]
fn out_file_is_written_whole_and_alone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.json");
    let o = run(&["--out", path.to_str().unwrap(), "roots", "g2"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["subsystem_classes"].as_array().unwrap().len(), 5);
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![Path::new("roots.json").as_os_str().to_owned()]);
}

#[test]
fn einstein_check_reports_without_failing() {
    let o = run(&["einstein-check", "--space", "lie:g2", "--metric", "1,1,1,1,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["is_einstein"], true);
    assert!((v["c"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    let v = json(&run(&["einstein-check", "--space", "lie:su2", "--metric", "1,2,3"]));
    assert_eq!(v["is_einstein"], false);
}

#[test]
fn aw_formulations_agree_from_the_command_line() {
    for form in ["direct", "reduced", "normal-transitive"] {
        let args = ["--mode", "exact", "go-check", "--space", "aw:5,2", "--metric", "1,2,3,1", "--formulation", form];
        assert_eq!(code(&run(&args)), 3, "{form}");
        let args = ["--mode", "exact", "go-check", "--space", "aw:5,2", "--metric", "3,3,3,2", "--formulation", form];
        assert_eq!(code(&run(&args)), 0, "{form}");
    }
}
