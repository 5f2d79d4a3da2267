use std::process::{Command, Output};

use hurzeta::cli_io::{run, ReportEnvelope};
use serde_json::Value;

fn hurzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurzeta"))
        .args(args)
        .env_remove("HURZETA_MAX_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> ReportEnvelope {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn success_exits_zero() {
    for args in [
        &["eval", "--k", "2", "--b", "1.25"][..],
        &["eval", "--k", "4", "--b", "3"],
        &["genfun", "--x", "0:0.4:5", "--b", "0.3"],
        &["oddzeta", "--j", "2"],
        &["validate", "--suite", "endpoint-identity", "--seed", "7"],
        &["sweep", "--k", "2,3", "--b", "0.5;1-0.5i"],
    ] {
        let out = hurzeta(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn usage_errors_exit_two_with_json_on_stderr() {
    for args in [
        &["eval", "--k", "2", "--b", "0"][..],
        &["eval", "--k", "2", "--b", "-3"],
        &["eval", "--k", "1", "--b", "0.5"],
        &["eval", "--k", "x", "--b", "0.5"],
        &["eval", "--b", "0.5"],
        &["oddzeta", "--j", "11"],
        &["sweep", "--k", "2:3", "--b", "nonsense"],
        &["validate", "--suite", "everything"],
        &["--rel-tol", "-1", "eval", "--k", "2", "--b", "0.5"],
        &["frobnicate"],
    ] {
        let out = hurzeta(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = hurzeta(&["eval", "--k", "2", "--b", "0"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn numeric_failure_exits_three_and_still_reports() {
    let out = hurzeta(&["genfun", "--x", "0.3", "--b", "0.5"]);
    assert_eq!(code(&out), 3);
    let env = report(&out);
    assert_eq!(env.summary.unsupported, 1);
    assert_eq!(env.results[0].outputs["case"], "half_int_unsupported");
    // a point on a singular locus is a numeric failure, not a usage error
    let out = hurzeta(&["genfun", "--x", "0.3", "--b", "0.3"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).summary.errors, 1);
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_hurzeta"))
        .args(["eval", "--k", "2", "--b", "0.5"])
        .env("HURZETA_MAX_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_hurzeta"))
        .args(["sweep", "--k", "2:6", "--b", "0.5;0.7"])
        .env("HURZETA_MAX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let single = report(&out);
    let many = report(&hurzeta(&["sweep", "--k", "2:6", "--b", "0.5;0.7"]));
    assert_eq!(single.untimed_results(), many.untimed_results());
}

#[test]
fn report_reexecutes_from_its_echo() {
    let out = hurzeta(&["validate", "--suite", "endpoint-identity", "--seed", "11"]);
    let env = report(&out);
    assert_eq!(env.config_echo.seed, 11);
    let again = run(&env.config_echo).unwrap();
    assert_eq!(env.untimed_results(), again.untimed_results());
    assert_eq!(env.summary, again.summary);
}

#[test]
fn csv_has_header_and_split_complex_columns() {
    let args = ["--format", "csv", "eval", "--k", "3", "--b", "0.4+0.3i"];
    let csv_out = hurzeta(&args);
    assert_eq!(code(&csv_out), 0);
    let json = report(&hurzeta(&args[2..]));
    let mut rd = csv::Reader::from_reader(&csv_out.stdout[..]);
    let head: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    for col in ["index", "status", "inputs.b_re", "inputs.b_im", "outputs.value_re", "outputs.value_im"] {
        assert!(head.iter().any(|h| h == col), "missing {col} in {head:?}");
    }
    let row = rd.records().next().unwrap().unwrap();
    let get = |name: &str| row[head.iter().position(|h| h == name).unwrap()].to_string();
    let value = &json.results[0].outputs["value"];
    assert_eq!(get("outputs.value_re").parse::<f64>().ok(), value["re"].as_f64());
    assert_eq!(get("outputs.value_im").parse::<f64>().ok(), value["im"].as_f64());
    // 17 significant digits
    let mantissa = get("outputs.value_re");
    let digits = mantissa.split('e').next().unwrap().chars().filter(char::is_ascii_digit).count();
    assert_eq!(digits, 17, "{mantissa}");
}

#[test]
fn output_file_and_human_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = hurzeta(&["-o", path.to_str().unwrap(), "oddzeta", "--j", "1:2"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let env: ReportEnvelope = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env.summary.total, 2);

    let out = hurzeta(&["--format", "human", "eval", "--k", "2", "--b", "1.25"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("term_integral"), "{text}");
}

#[test]
fn integer_shift_is_routed_with_notice() {
    let env = report(&hurzeta(&["eval", "--k", "2", "--b", "1"]));
    let r = &env.results[0];
    assert_eq!(r.outputs["route"], "series_shift");
    let v = r.outputs["value"]["re"].as_f64().unwrap();
    assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    assert!(r.warnings.iter().any(|w| w.contains("integer b")));
}
