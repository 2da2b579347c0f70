use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_simons-verify"));
    c.env_remove("SIMONS_VERIFY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simons-verify-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_degree_two() {
    let out = run(&["verify", "--degree", "2", "--samples", "200", "--seed", "42", "--tol", "1e-8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["config"]["samples"], 200);
    let residuals = v["per_degree"]["2"]["residuals"].as_object().unwrap();
    assert_eq!(residuals.len(), 28);
    assert!(residuals.values().all(|r| r.as_f64().unwrap() < 1e-8));
    assert!(v.get("gap").is_none() && v["per_degree"]["2"].get("integrals").is_none());
}

#[test]
fn gap_report() {
    let out = run(&["gap", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s_star = v["gap"]["s_star"].as_f64().unwrap();
    assert_eq!(format!("{s_star:.8}"), "1.72935007");
    assert_eq!(v["gap"]["forbidden"].to_string(), "[1.72936,1.73355]");
    assert_eq!(v["gap"]["endpoints"]["f(5/3)"], "0");
    assert_eq!(v["gap"]["endpoints"]["f(9/5)"], "0");
    assert!(v["per_degree"].as_object().unwrap().is_empty());
}

#[test]
fn algebra_lists_six_identities() {
    let out = run(&["algebra", "--pinch-samples", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ids = v["algebra"]["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 6);
    assert!(ids.iter().all(|c| c["holds"] == true));
    let text = String::from_utf8(run(&["algebra", "--format", "text", "--pinch-samples", "10"]).stdout).unwrap();
    for name in ["FINALPOLY", "FDISC", "EPSROOTS", "CRITQUAD", "KSREL", "COMBOZERO"] {
        assert!(text.contains(&format!("{name:<10} true")), "{text}");
    }
}

#[test]
fn integrate_one_degree() {
    let dir = scratch("rules");
    let out = run(&["integrate", "--degree", "3", "--quad-order", "10", "--export-rule", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let ints = v["per_degree"]["3"]["integrals"].as_object().unwrap();
    for key in ["identity1", "identity2", "identity3", "gauss_bonnet", "area", "bochner0", "bochner4"] {
        assert_eq!(ints[key]["pass"], true, "{key}");
    }
    let csv = std::fs::read_to_string(dir.join("rule_s3_n10.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("chart,u,v,weight"));
    assert_eq!(lines.count(), 200);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = run(&["verify", "--degree", "3", "--samples", "5", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("FAILED: s=3 "), "{err}");
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec![],
        vec!["verify", "--degree", "7"],
        vec!["verify", "--degree", "0"],
        vec!["verify", "--tol", "-1"],
        vec!["verify", "--samples", "0"],
        vec!["verify", "--format", "xml"],
        vec!["verify", "--precision", "quad"],
        vec!["verify", "--config", "/nonexistent/simons.conf"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = bin().args(["gap"]).env("SIMONS_VERIFY_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn byte_identical_reports() {
    let args = ["all", "--degree", "2,3", "--samples", "30", "--quad-order", "16", "--pinch-samples", "1000"];
    let a = run(&args);
    let b = bin().args(args).env("SIMONS_VERIFY_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flags_override_config_file() {
    let dir = scratch("config");
    let path = dir.join("run.conf");
    std::fs::write(&path, "# batch\ndegree = 1, 2\nsamples = 5\nseed = 9\nformat = text\n").unwrap();
    let out = run(&["verify", "--config", path.to_str().unwrap(), "--seed", "10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = &json(&out)["config"];
    assert_eq!((cfg["samples"].as_u64(), cfg["seed"].as_u64()), (Some(5), Some(10)));
    assert_eq!(cfg["degree"].to_string(), "[1,2]");

    std::fs::write(&path, "samples = 5\nunknown = 1\n").unwrap();
    assert_eq!(run(&["verify", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn csv_and_text_formats() {
    let out = run(&["verify", "--degree", "2", "--samples", "5", "--format", "csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("section,degree,name,value,reference,pass\n"));
    assert!(csv.contains("\nresidual,2,MINIMAL,"));
    assert!(csv.trim_end().ends_with("overall,,pass,true,,true"));

    let text = String::from_utf8(run(&["gap", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("s_star     1.72935007"));
    assert!(text.contains("forbidden  (1.72936, 1.73355)"));
}
