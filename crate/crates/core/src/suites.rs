//! Named check suites behind `hurzeta validate`.

use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cli_io::{cplx, num, Record, Status};
use crate::error::{HurzetaError, Result};
use crate::exec;
use crate::genfun::zeta_from_genfun;
use crate::hurwitz::{
    distance_to_integer, hurwitz_series_oracle, hurwitz_zeta, BracketKernel, ZetaParams,
};
use crate::quadrature::QuadratureSpec;
use crate::validation::{
    log_asymptotic_scan, theorem1_scan, zero_integral_scan, ConvergenceReport, Verdict,
};

pub const THEOREM1_ORDERS: [u32; 3] = [0, 1, 3];
pub const SCAN_N: [u64; 3] = [100, 1_000, 10_000];
pub const ZERO_INTEGRAL_N: [u64; 6] = [1, 2, 5, 17, 50, 100];
pub const LOG_ORDERS: [f64; 2] = [2.0, 3.0];

pub const GRID_ORDERS: std::ops::RangeInclusive<u32> = 2..=10;
pub const GRID_SHIFTS: [(f64, f64); 8] = [
    (0.25, 0.0),
    (0.5, 0.0),
    (1.25, 0.0),
    (2.0, 0.0),
    (3.75, 0.0),
    (1.0, 0.5),
    (2.0, 1.0),
    (0.6, -0.2),
];
/// Bound on `|formula - oracle| / (1 + |oracle|)`.
pub const GRID_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-15;
/// Circle radius and node count for integer shifts, which go through the
/// Taylor coefficients of the generating function instead.
pub const INTEGER_SHIFT_RADIUS: f64 = 1.25;
pub const INTEGER_SHIFT_NODES: usize = 64;

pub const ENDPOINT_DRAWS: usize = 300;
pub const ENDPOINT_ORDERS: std::ops::RangeInclusive<u32> = 2..=10;
pub const ENDPOINT_MAX_RE: f64 = 5.0;
pub const ENDPOINT_MAX_IM: f64 = 2.0;
pub const ENDPOINT_TOL: f64 = 1e-11;
/// Draws closer than this to an integer are redrawn (`q` would sit on the polylog pole).
pub const ENDPOINT_INT_GAP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    ZeroIntegral,
    LogAsymptotic,
    OracleGrid,
    EndpointIdentity,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "theorem1",
        "zero-integral",
        "log-asymptotic",
        "oracle-grid",
        "endpoint-identity",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = HurzetaError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem1" => Suite::Theorem1,
            "zero-integral" => Suite::ZeroIntegral,
            "log-asymptotic" => Suite::LogAsymptotic,
            "oracle-grid" => Suite::OracleGrid,
            "endpoint-identity" => Suite::EndpointIdentity,
            "all" => Suite::All,
            _ => {
                return Err(HurzetaError::Usage(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

fn timed<F: FnOnce() -> Record>(f: F) -> Record {
    let start = Instant::now();
    let mut r = f();
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    r
}

fn check(suite: &str, name: &str) -> Record {
    let mut r = Record::new("check");
    r.input("suite", json!(suite)).input("check", json!(name));
    r
}

fn verdict_status(passed: bool) -> Status {
    if passed {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn report_record(suite: &str, name: &str, rep: Result<ConvergenceReport>) -> Record {
    let mut r = check(suite, name);
    match rep {
        Ok(rep) => {
            r.input("n_values", json!(rep.n_values));
            r.output("observed", Value::Array(rep.observed.iter().map(|v| num(*v)).collect()))
                .output("deviations", Value::Array(rep.deviations.iter().map(|v| num(*v)).collect()))
                .output("fitted_rate", rep.fitted_rate.map_or(Value::Null, num))
                .output("target", serde_json::to_value(rep.target).unwrap_or(Value::Null))
                .output("verdict", serde_json::to_value(rep.verdict).unwrap_or(Value::Null));
            r.warnings = rep.notes;
            r.status = verdict_status(rep.verdict == Verdict::Pass);
        }
        Err(e) => {
            r.fail_with(Status::Error, &e);
        }
    }
    r
}

pub fn theorem1_suite(spec: &QuadratureSpec) -> Vec<Record> {
    THEOREM1_ORDERS
        .iter()
        .map(|&k| {
            timed(|| {
                let mut r = report_record("theorem1", "theorem1", theorem1_scan(k, &SCAN_N, spec));
                r.input("k", json!(k));
                r
            })
        })
        .collect()
}

pub fn zero_integral_suite(spec: &QuadratureSpec) -> Vec<Record> {
    vec![timed(|| {
        let mut r = report_record(
            "zero-integral",
            "zero integral",
            zero_integral_scan(&ZERO_INTEGRAL_N, spec),
        );
        r.output("threshold", num(crate::validation::ZERO_INTEGRAL_BOUND));
        r
    })]
}

/// Runs at [`QuadratureSpec::precise`]: the residuals reach `1e-11` at `n = 10^4`.
pub fn log_asymptotic_suite() -> Vec<Record> {
    let spec = QuadratureSpec::precise();
    LOG_ORDERS
        .iter()
        .map(|&k| {
            timed(|| {
                let mut r = report_record(
                    "log-asymptotic",
                    "log asymptotic",
                    log_asymptotic_scan(k, &SCAN_N, &spec),
                );
                r.input("k", num(k));
                r
            })
        })
        .collect()
}

/// `(k, b)` cells of the oracle grid in report order.
pub fn grid_cells() -> Vec<(u32, Complex64)> {
    GRID_ORDERS
        .flat_map(|k| GRID_SHIFTS.iter().map(move |&(re, im)| (k, Complex64::new(re, im))))
        .collect()
}

/// Closed-form value for one grid cell: the combined formula, or for integer
/// `b` the Taylor coefficient of the generating function.
pub fn grid_formula_value(k: u32, b: Complex64, spec: &QuadratureSpec) -> Result<(Complex64, &'static str)> {
    let params = ZetaParams::new(k, b)?;
    if params.is_integer_shift() {
        let v = zeta_from_genfun(k, b, INTEGER_SHIFT_RADIUS, INTEGER_SHIFT_NODES)?;
        Ok((v.value, "genfun_taylor"))
    } else {
        Ok((hurwitz_zeta(&params, spec)?.total, "formula"))
    }
}

pub fn oracle_grid_suite(spec: &QuadratureSpec) -> Vec<Record> {
    let cells = grid_cells();
    exec::map(&cells, |&(k, b)| {
        timed(|| {
            let mut r = check("oracle-grid", "formula vs series");
            r.input("k", json!(k)).input("b", cplx(b));
            let outcome = grid_formula_value(k, b, spec).and_then(|(v, route)| {
                let o = hurwitz_series_oracle(k, b, ORACLE_TOL)?;
                Ok((v, o, route))
            });
            match outcome {
                Ok((v, o, route)) => {
                    let err = (v - o).norm() / (1.0 + o.norm());
                    r.output("value", cplx(v))
                        .output("oracle", cplx(o))
                        .output("route", json!(route))
                        .output("relative_error", num(err))
                        .output("threshold", num(GRID_TOL));
                    r.status = verdict_status(err <= GRID_TOL);
                }
                Err(e) => {
                    r.fail_with(Status::Error, &e);
                }
            }
            r
        })
    })
}

/// Seeded `(k, b)` draws, `k` in `2..=10`, `Re b` in `(0, 5)`; every other draw
/// is real, the rest have `|Im b| <= 2`. Near-integer `b` is redrawn.
pub fn endpoint_draws(seed: u64, count: usize) -> Vec<(u32, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(ENDPOINT_ORDERS);
        let re = rng.gen_range(0.0..ENDPOINT_MAX_RE);
        let im = if out.len() % 2 == 0 {
            0.0
        } else {
            rng.gen_range(-ENDPOINT_MAX_IM..=ENDPOINT_MAX_IM)
        };
        let b = Complex64::new(re, im);
        if distance_to_integer(b) >= ENDPOINT_INT_GAP {
            out.push((k, b));
        }
    }
    out
}

/// `|B(0) - B(1)|` and the cancellation scale for one draw.
pub fn endpoint_residue(k: u32, b: Complex64) -> Result<(f64, f64)> {
    let kernel = BracketKernel::new(ZetaParams::new(k, b)?)?;
    Ok((kernel.eval(0.0).norm(), kernel.endpoint_scale()))
}

pub fn endpoint_identity_suite(seed: u64) -> Vec<Record> {
    let draws = endpoint_draws(seed, ENDPOINT_DRAWS);
    exec::map(&draws, |&(k, b)| {
        timed(|| {
            let mut r = check("endpoint-identity", "B(0) = B(1)");
            r.input("k", json!(k)).input("b", cplx(b)).input("seed", json!(seed));
            match endpoint_residue(k, b) {
                Ok((res, scale)) => {
                    r.output("residue", num(res))
                        .output("scale", num(scale))
                        .output("threshold", num(ENDPOINT_TOL * scale));
                    r.status = verdict_status(res <= ENDPOINT_TOL * scale);
                }
                Err(e) => {
                    r.fail_with(Status::Error, &e);
                }
            }
            r
        })
    })
}

/// Records of `suite` in a fixed order, indexed from zero.
pub fn run_suite(suite: Suite, seed: u64, spec: &QuadratureSpec) -> Vec<Record> {
    let mut records = match suite {
        Suite::Theorem1 => theorem1_suite(spec),
        Suite::ZeroIntegral => zero_integral_suite(spec),
        Suite::LogAsymptotic => log_asymptotic_suite(),
        Suite::OracleGrid => oracle_grid_suite(spec),
        Suite::EndpointIdentity => endpoint_identity_suite(seed),
        Suite::All => {
            let mut all = theorem1_suite(spec);
            all.extend(zero_integral_suite(spec));
            all.extend(log_asymptotic_suite());
            all.extend(oracle_grid_suite(spec));
            all.extend(endpoint_identity_suite(seed));
            all
        }
    };
    for (i, r) in records.iter_mut().enumerate() {
        r.index = i;
    }
    records
}
