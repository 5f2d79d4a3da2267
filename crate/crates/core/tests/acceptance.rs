//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! verdicts always show up in the output; exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{c, csch_coefficients, hurwitz_em, rel, sinh_series, zeta_em, CASE_SEED, CATALAN_G};
use hurzeta::cli_io::{run, to_csv, ReportEnvelope, DEFAULT_SEED};
use hurzeta::genfun::{
    classify_case, genfun_closed, genfun_series, odd_zeta_integral, radius_of_convergence,
    sinh_kernel, zeta_from_genfun, CaseTag,
};
use hurzeta::hurwitz::{distance_to_integer, hurwitz_zeta, ZetaParams};
use hurzeta::quadrature::QuadratureSpec;
use hurzeta::suites::{
    endpoint_draws, endpoint_residue, grid_cells, grid_formula_value, ENDPOINT_DRAWS,
    ENDPOINT_TOL, SCAN_N,
};
use hurzeta::validation::{log_asymptotic_scan, theorem1_scan, zero_integral_scan, Verdict,
    EXACT_FLOOR};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion(n: u32, name: &str, budget_s: u64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = took <= Duration::from_secs(budget_s);
    let pass = o.pass && in_time;
    println!(
        "criterion {n:>2} {:<4} {name}: {} [{:.2} s of {budget_s} s]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        took.as_secs_f64(),
    );
    pass
}

fn special_value() -> Outcome {
    let expected = -16.0 + PI * PI + 8.0 * CATALAN_G;
    let b = c(1.25, 0.0);
    let spec = QuadratureSpec::default();
    let formula = hurwitz_zeta(&ZetaParams::new(2, b).unwrap(), &spec).unwrap().total;
    let err_formula = (formula - expected).norm() / expected;
    let taylor = zeta_from_genfun(2, b, 0.3, 32).unwrap().value;
    let err_taylor = (taylor - expected).norm() / expected;
    outcome(
        err_formula <= 1e-10 && err_taylor <= 1e-6,
        format!("formula rel {err_formula:.2e} (<= 1e-10), Taylor route rel {err_taylor:.2e} (<= 1e-6)"),
    )
}

fn oracle_grid() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = (0.0, 0, c(0.0, 0.0));
    let mut failures = 0;
    let cells = grid_cells();
    for &(k, b) in &cells {
        let reference = hurwitz_em(k, b, 60);
        let err = match grid_formula_value(k, b, &spec) {
            Ok((v, _)) => rel(v, reference),
            Err(_) => f64::INFINITY,
        };
        if err > 1e-8 {
            failures += 1;
        }
        if err > worst.0 {
            worst = (err, k, b);
        }
    }
    outcome(
        failures == 0,
        format!(
            "{} cells, {failures} above 1e-8 (relative to 1 + |zeta|); worst {:.2e} at k={} b={}",
            cells.len(),
            worst.0,
            worst.1,
            worst.2
        ),
    )
}

fn endpoint_identity() -> Outcome {
    let draws = endpoint_draws(DEFAULT_SEED, ENDPOINT_DRAWS);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for &(k, b) in &draws {
        match endpoint_residue(k, b) {
            Ok((residue, scale)) => {
                let ratio = residue / scale;
                worst = worst.max(ratio);
                if ratio > ENDPOINT_TOL {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures == 0 && draws.len() == 300,
        format!(
            "{} seeded draws, {failures} with |B(0)| > 1e-11 scale; worst ratio {worst:.2e}",
            draws.len()
        ),
    )
}

const REAL_SHIFTS: [f64; 8] = [0.25, 0.5, 0.75, 1.25, 1.6, 2.3, 3.75, 4.4];

fn realness_and_shift() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst_im: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    let mut failures = 0;
    for k in 2..=10u32 {
        for &b in &REAL_SHIFTS {
            let z = |b: f64| hurwitz_zeta(&ZetaParams::new(k, c(b, 0.0)).unwrap(), &spec).unwrap().total;
            let here = z(b);
            let next = z(b + 1.0);
            let im = here.im.abs() / (1.0 + here.norm());
            let shift = (here - next - b.powi(-(k as i32))).norm();
            worst_im = worst_im.max(im);
            worst_shift = worst_shift.max(shift);
            if im > 1e-10 || shift > 1e-9 {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!(
            "{} cells, {failures} failing; worst |Im|/(1+|z|) {worst_im:.2e} (<= 1e-10), worst shift residual {worst_shift:.2e} (<= 1e-9)",
            9 * REAL_SHIFTS.len()
        ),
    )
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let rho = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

fn generic_shift(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let b = c(rng.gen_range(-2.4..3.4), rng.gen_range(-1.0..1.0));
        if distance_to_integer(2.0 * b) > 0.05 && distance_to_integer(4.0 * b) > 0.05 {
            return b;
        }
    }
}

fn generating_function() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(CASE_SEED);
    let mut parts = Vec::new();
    let mut all = true;
    for tag in [CaseTag::Generic, CaseTag::BZero, CaseTag::BPosInt, CaseTag::BNegInt] {
        let mut worst: f64 = 0.0;
        let mut done = 0;
        let mut failures = 0;
        while done < 25 {
            let b = match tag {
                CaseTag::Generic => generic_shift(&mut rng),
                CaseTag::BZero => c(0.0, 0.0),
                CaseTag::BPosInt => c((1 + done % 3) as f64, 0.0),
                _ => c(-((1 + done % 3) as f64), 0.0),
            };
            let x = disc_point(&mut rng, 0.8 * radius_of_convergence(b));
            assert_eq!(classify_case(x, b).tag, tag);
            // draws on a singular locus of the closed form are outside its domain
            let Ok(closed) = genfun_closed(x, b, &spec) else {
                continue;
            };
            let series = genfun_series(x, b, 120).unwrap();
            let err = (closed.total - series.value).norm();
            let bound = series.tail_estimate.max(1e-6);
            worst = worst.max(err);
            if err > bound {
                failures += 1;
            }
            done += 1;
        }
        all &= failures == 0;
        parts.push(format!("{} {failures}/25 fail (worst {worst:.1e})", tag.as_str()));
    }
    let mut worst_int: f64 = 0.0;
    for _ in 0..10 {
        let b = generic_shift(&mut rng);
        let v = genfun_closed(2.0 * b, b, &spec).map(|e| e.integral_term.norm());
        worst_int = worst_int.max(v.unwrap_or(f64::INFINITY));
    }
    all &= worst_int <= 1e-9;
    outcome(
        all,
        format!("{}; integral term at x = 2b max {worst_int:.1e} (<= 1e-9)", parts.join(", ")),
    )
}

fn odd_zeta() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for j in 1..=5 {
        let v = odd_zeta_integral(j, &spec).unwrap_or(f64::NAN);
        let reference = zeta_em(2 * j + 1);
        let err = (v - reference).abs() / reference;
        worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
    }
    outcome(worst <= 1e-9, format!("j = 1..5, worst relative error {worst:.2e} (<= 1e-9)"))
}

fn oscillatory_limit() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut parts = Vec::new();
    let mut all = true;
    for k in [0, 1, 3] {
        let r = theorem1_scan(k, &SCAN_N, &spec).unwrap();
        let max_dev = r.deviations.iter().cloned().fold(0.0, f64::max);
        all &= r.verdict == Verdict::Pass;
        let rate = match r.fitted_rate {
            _ if max_dev <= EXACT_FLOOR => "exact".to_string(),
            Some(p) => format!("exponent {p:.3}"),
            None => "no fit".to_string(),
        };
        parts.push(format!("k={k} {rate} (max dev {max_dev:.1e})"));
    }
    let n: Vec<u64> = (1..=100).collect();
    let z = zero_integral_scan(&n, &spec).unwrap();
    let worst = z.deviations.iter().cloned().fold(0.0, f64::max);
    all &= z.verdict == Verdict::Pass && worst <= 1e-8;
    outcome(
        all,
        format!("{}; zero integral n = 1..100 max {worst:.1e} (<= 1e-8)", parts.join(", ")),
    )
}

fn log_asymptotic() -> Outcome {
    let spec = QuadratureSpec::precise();
    let mut parts = Vec::new();
    let mut all = true;
    for k in [2.0, 3.0] {
        let r = log_asymptotic_scan(k, &[10, 100, 1_000, 10_000], &spec).unwrap();
        all &= r.verdict == Verdict::Pass;
        let ratios: Vec<String> = r
            .deviations
            .windows(2)
            .map(|w| format!("{:.0}x", w[0] / w[1]))
            .collect();
        parts.push(format!("k={k} decade gains [{}]", ratios.join(", ")));
    }
    outcome(all, format!("{} (each >= 2x)", parts.join("; ")))
}

fn sinh_identity() -> Outcome {
    let scaled = csch_coefficients(340);
    let mut rng = ChaCha8Rng::seed_from_u64(CASE_SEED ^ 0x51);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let cc = disc_point(&mut rng, 3.0);
        let u = rng.gen::<f64>();
        let closed = sinh_kernel(cc, u).unwrap();
        worst = worst.max((sinh_series(cc, u, &scaled) - closed).norm());
    }
    outcome(worst <= 1e-10, format!("20 seeded (c, u), |c| <= 3, worst {worst:.2e} (<= 1e-10)"))
}

fn hurzeta(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hurzeta"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_session() -> Outcome {
    let mut problems = Vec::new();
    let expect = [
        (vec!["eval", "--k", "3", "--b", "0.4+0.3i"], 0),
        (vec!["sweep", "--k", "2:4", "--b", "0.25;1+0.5i"], 0),
        (vec!["oddzeta", "--j", "1:3"], 0),
        (vec!["validate", "--suite", "zero-integral"], 0),
        (vec!["eval", "--k", "2", "--b", "0"], 2),
        (vec!["eval", "--k", "2"], 2),
        (vec!["validate", "--suite", "nope"], 2),
        (vec!["--format", "xml", "eval", "--k", "2", "--b", "1.5"], 2),
        (vec!["genfun", "--x", "0.3", "--b", "0.5"], 3),
    ];
    for (args, code) in &expect {
        let (got, _) = hurzeta(args);
        if got != *code {
            problems.push(format!("`{}` exited {got}, wanted {code}", args.join(" ")));
        }
    }
    // the JSON report re-runs from its own config echo to identical results
    let (_, text) = hurzeta(&["sweep", "--k", "2:5", "--b", "0.7;2-0.3i;1"]);
    let first: ReportEnvelope = serde_json::from_str(&text).expect("json report");
    let again = run(&first.config_echo).expect("rerun");
    if first.untimed_results() != again.untimed_results() {
        problems.push("JSON rerun differs".into());
    }
    // CSV carries the same numbers as JSON
    let (_, csv_cli) = hurzeta(&["--format", "csv", "sweep", "--k", "2:5", "--b", "0.7;2-0.3i;1"]);
    let csv_lib = to_csv(&again).expect("csv");
    let strip = |s: &str| -> Vec<Vec<String>> {
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let head = rd.headers().unwrap().clone();
        let t = head.iter().position(|h| h == "timing_ms").unwrap();
        rd.records()
            .map(|r| {
                let r = r.unwrap();
                r.iter().enumerate().filter(|(i, _)| *i != t).map(|(_, v)| v.to_string()).collect()
            })
            .collect()
    };
    if strip(&csv_cli) != strip(&csv_lib) {
        problems.push("CSV differs between runs".into());
    }
    let rows = strip(&csv_cli);
    let mut rd = csv::Reader::from_reader(csv_cli.as_bytes());
    let head: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    let col = head.iter().position(|h| h == "outputs.value_re").unwrap();
    for (row, rec) in rows.iter().zip(&first.results) {
        let from_csv: f64 = row[col].parse().unwrap();
        if Some(from_csv) != rec.outputs["value"]["re"].as_f64() {
            problems.push(format!("CSV value {from_csv} differs from JSON"));
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{} exit-code cases, JSON rerun and CSV/JSON agreement hold", expect.len())
        } else {
            problems.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "special value zeta(2, 5/4)", 1, special_value),
        criterion(2, "oracle grid", 30, oracle_grid),
        criterion(3, "endpoint identity", 5, endpoint_identity),
        criterion(4, "realness and shift identity", 10, realness_and_shift),
        criterion(5, "generating function", 60, generating_function),
        criterion(6, "odd zeta representation", 10, odd_zeta),
        criterion(7, "oscillatory limit scan", 120, oscillatory_limit),
        criterion(8, "log-asymptotic scan", 120, log_asymptotic),
        criterion(9, "sinh-kernel identity", 1, sinh_identity),
        criterion(10, "CLI black box", 10, cli_session),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
