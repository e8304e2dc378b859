use std::process::{Command, Output};

use serde_json::Value;

fn pfzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfzero"))
        .args(args)
        .output()
        .expect("spawn")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn circle_scalar_ode() {
    let out = pfzero(&["scalar-ode", "-H", "x^2+y^2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ode"]["equation"], "y' - (1/t) y = 0");
    assert_eq!(v["schema_version"], 1);
    assert!(v["artifact"].is_string());
}

#[test]
fn augmented_circle_ode() {
    let out = pfzero(&["scalar-ode", "-H", "x^2+y^2", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ode"]["order"], 2);
    assert_eq!(v["ode"]["equation"], "y'' = 0");
}

#[test]
fn repeated_factor_at_infinity_is_degenerate() {
    let out = pfzero(&["analyze", "-H", "x^3 + y"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotRegularAtInfinity"));
}

#[test]
fn analyze_reports_basis() {
    let v = json_of(&pfzero(&["analyze", "-H", "x^3 - x*y^2 + y"]));
    assert_eq!(v["degree"], 3);
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    assert_eq!(v["count_with_multiplicity"], 4);
}

#[test]
fn bounds_calculator() {
    let out = pfzero(&["bounds", "-d", "2", "--rho", "0.5", "-c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["double_exponential"]["exact"], "256");
    assert_eq!(v["double_exponential"]["label"], "theoretical, not a computed count");
    let bad = pfzero(&["bounds", "-d", "2", "--rho", "2", "-c", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = pfzero(&["analyze", "-H", "x^"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 2"));
    assert_eq!(pfzero(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pfzero(&["analyze"]).status.code(), Some(1));
    assert_eq!(pfzero(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let a = pfzero(&["pf-system", "-H", "x^3 - x*y^2 + y"]);
    let b = pfzero(&["pf-system", "-H", "x^3 - x*y^2 + y"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"A_entries\""));
}

#[test]
fn floats_use_seventeen_digits() {
    let out = pfzero(&["periods", "-H", "x^2+y^2", "--path", "1,0;4,0", "--cycle", "oval:1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_re,t_im,p0_re,p0_im,error"));
    let last: Vec<f64> = lines.last().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    assert!((last[2] - 4.0 * std::f64::consts::PI).abs() < 1e-8);
    assert!(text.contains("e0,"));
}

#[test]
fn count_zeros_linear_period() {
    let out = pfzero(&[
        "count-zeros",
        "-H",
        "x^2+y^2",
        "--domain",
        "disc:1,0,0.4",
        "--rho",
        "0.5",
        "--relaxed",
        "--mode",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["numeric_count"], 0);
    assert!(v["total_bound"].as_u64().is_some());
    assert_eq!(v["consistent"], true);
    let strict = pfzero(&[
        "count-zeros",
        "-H",
        "x^2+y^2",
        "--domain",
        "disc:1,0,0.4",
        "--rho",
        "0.5",
    ]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn default_domain_is_announced() {
    let out = pfzero(&["count-zeros", "-H", "x^2+y^2"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("default rho"));
    assert!(err.contains("default disc"));
}

#[test]
fn verify_cubic_and_critical_level() {
    let out = pfzero(&["verify", "-H", "x^3 - x*y^2 + y", "--samples", "1.1,1.4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["max_residual"].as_f64().unwrap() < 1e-6);
    let crit = pfzero(&["verify", "-H", "x^2+y^2", "--samples", "0", "--cycle", "oval:1,0"]);
    assert_eq!(crit.status.code(), Some(3));
}

#[test]
fn precision_variable() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_pfzero"))
            .args(["verify", "-H", "x^2+y^2", "--samples", "1", "--cycle", "oval:1,0"])
            .env("PFZERO_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    let hi = run("200");
    assert_eq!(hi.status.code(), Some(0));
    assert_eq!(json_of(&hi)["precision_bits"], 200);
    assert_eq!(run("seven").status.code(), Some(1));
}

#[test]
fn config_file_matches_flags() {
    let dir = std::env::temp_dir().join(format!("pfzero-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    std::fs::write(
        &job,
        r#"{"schema_version": 1, "command": "scalar-ode", "hamiltonian": "x^2+y^2"}"#,
    )
    .unwrap();
    let from_file = pfzero(&["--config", job.to_str().unwrap()]);
    let from_flags = pfzero(&["scalar-ode", "-H", "x^2+y^2"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_flags.stdout);
    let target = dir.join("out.json");
    let written = pfzero(&["--config", job.to_str().unwrap(), "-o", target.to_str().unwrap()]);
    assert_eq!(written.status.code(), Some(0));
    assert_eq!(std::fs::read(&target).unwrap(), from_flags.stdout);
    std::fs::write(
        &job,
        r#"{"command": "scalar-ode", "hamiltonian": "x^2+y^2", "colour": 3}"#,
    )
    .unwrap();
    assert_eq!(pfzero(&["--config", job.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}
