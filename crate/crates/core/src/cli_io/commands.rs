use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use super::parse::{parse_complex, parse_complex_list, parse_complex_points, parse_int_range};
use super::{cplx, num, Command, Record, ReportEnvelope, RunConfig, Status};
use crate::error::{HurzetaError, Result, Warning};
use crate::exec;
use crate::genfun::{
    genfun_closed, genfun_series, odd_zeta_integral, radius_of_convergence, CaseTag, ODD_ZETA_MAX_J, SERIES_MARGIN,
};
use crate::hurwitz::{hurwitz_reference, hurwitz_series_oracle, hurwitz_zeta, ZetaParams};
use crate::quadrature::QuadratureSpec;
use crate::suites::{run_suite, Suite, GRID_TOL, ORACLE_TOL};

/// Terms in the series cross-check attached to `genfun` records.
pub const GENFUN_SERIES_TERMS: u32 = 120;
/// Safety bound on the number of cells in one run.
pub const MAX_CELLS: usize = 100_000;

/// Executes `config` and assembles the report. Parameter problems are
/// returned as errors before any evaluation; numeric failures become records.
pub fn run(config: &RunConfig) -> Result<ReportEnvelope> {
    config.validate()?;
    let spec = config.spec()?;
    let mut records = match config.command {
        Command::Eval => {
            let k = parse_order(config.param("k")?)?;
            let b = parse_complex(config.param("b")?)?;
            ZetaParams::new(k, b)?;
            vec![timed(|| eval_record(k, b, &spec))]
        }
        Command::Sweep => {
            let ks = parse_int_range(config.param("k")?)?;
            let bs = parse_complex_list(config.param("b")?)?;
            check_cells(ks.len() * bs.len())?;
            let mut cells = Vec::with_capacity(ks.len() * bs.len());
            for &k in &ks {
                for &b in &bs {
                    ZetaParams::new(k, b)?;
                    cells.push((k, b));
                }
            }
            exec::map(&cells, |&(k, b)| timed(|| eval_record(k, b, &spec)))
        }
        Command::Genfun => {
            let xs = parse_complex_points(config.param("x")?)?;
            let b = parse_complex(config.param("b")?)?;
            check_cells(xs.len())?;
            exec::map(&xs, |&x| timed(|| genfun_record(x, b, &spec)))
        }
        Command::Oddzeta => {
            let js = parse_int_range(config.param("j")?)?;
            check_cells(js.len())?;
            if let Some(bad) = js.iter().find(|j| !(1..=ODD_ZETA_MAX_J).contains(*j)) {
                return Err(HurzetaError::Domain(format!(
                    "j = {bad} outside 1..={ODD_ZETA_MAX_J}"
                )));
            }
            exec::map(&js, |&j| timed(|| oddzeta_record(j, &spec)))
        }
        Command::Validate => {
            let suite: Suite = config.param("suite")?.parse()?;
            run_suite(suite, config.seed, &spec)
        }
    };
    for (i, r) in records.iter_mut().enumerate() {
        r.index = i;
    }
    Ok(ReportEnvelope::new(config.clone(), records))
}

fn parse_order(raw: &str) -> Result<u32> {
    let k: u32 = raw
        .trim()
        .parse()
        .map_err(|_| HurzetaError::Usage(format!("k must be an integer, got {raw:?}")))?;
    Ok(k)
}

fn check_cells(n: usize) -> Result<()> {
    if n > MAX_CELLS {
        return Err(HurzetaError::Usage(format!(
            "{n} cells requested; limit is {MAX_CELLS}"
        )));
    }
    Ok(())
}

fn timed<F: FnOnce() -> Record>(f: F) -> Record {
    let start = Instant::now();
    let mut r = f();
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    r
}

fn warnings_text(ws: &[Warning]) -> Vec<String> {
    ws.iter().map(ToString::to_string).collect()
}

/// One `zeta(k, b)` cell: combined formula, series oracle, and their gap.
/// Integer `b` skips the formula and reports the series/shift value.
pub fn eval_record(k: u32, b: Complex64, spec: &QuadratureSpec) -> Record {
    let mut r = Record::new("eval");
    r.input("k", json!(k)).input("b", cplx(b));
    let params = match ZetaParams::new(k, b) {
        Ok(p) => p,
        Err(e) => {
            r.fail_with(Status::Error, &e);
            return r;
        }
    };
    let oracle = hurwitz_reference(k, b, ORACLE_TOL);
    if let Ok(o) = oracle {
        r.output("oracle", cplx(o));
    }
    if params.is_integer_shift() {
        r.warnings.push(Warning::IntegerShiftRouted.to_string());
        r.output("route", json!("series_shift"));
        match oracle {
            Ok(o) => {
                r.output("value", cplx(o));
            }
            Err(e) => {
                r.fail_with(Status::Error, &e);
            }
        }
        return r;
    }
    r.output("route", json!("formula"));
    match hurwitz_zeta(&params, spec) {
        Ok(br) => {
            r.output("value", cplx(br.total))
                .output("term_half_bk", cplx(br.term_half_bk))
                .output("term_polylog_single", cplx(br.term_polylog_single))
                .output("term_polylog_sum", cplx(br.term_polylog_sum))
                .output("term_integral", cplx(br.term_integral))
                .output("quadrature_evaluations", json!(br.quadrature.evaluations))
                .output("quadrature_converged", json!(br.quadrature.converged));
            let prefactor = (2.0 * std::f64::consts::PI).powi(k as i32) / 2.0;
            r.estimate("term_integral", prefactor * br.quadrature.error_estimate);
            r.estimate("value", br.error_bound);
            r.warnings.extend(warnings_text(&br.warnings));
            match oracle {
                Ok(o) => {
                    let gap = (br.total - o).norm() / (1.0 + o.norm());
                    r.output("discrepancy", num(gap));
                    if gap > GRID_TOL {
                        r.warnings.push(format!(
                            "formula and oracle differ by {gap:e} (relative to 1 + |oracle|)"
                        ));
                    }
                }
                Err(e) => r.warnings.push(format!("oracle unavailable: {e}")),
            }
        }
        Err(e) => {
            r.fail_with(Status::Error, &e);
        }
    }
    r
}

/// One closed-form `f(x, b)` point with its case tag, proximity distances and,
/// inside the disc of convergence, the truncated series for comparison.
pub fn genfun_record(x: Complex64, b: Complex64, spec: &QuadratureSpec) -> Record {
    let mut r = Record::new("genfun");
    r.input("x", cplx(x)).input("b", cplx(b));
    match genfun_closed(x, b, spec) {
        Ok(ev) => {
            r.output("case", json!(ev.case.tag.as_str()))
                .output("rational_term", cplx(ev.rational_term))
                .output("trig_term", cplx(ev.trig_term))
                .output("integral_term", cplx(ev.integral_term))
                .output("total", cplx(ev.total))
                .output(
                    "proximity",
                    serde_json::to_value(ev.case.proximity).unwrap_or_default(),
                );
            r.estimate(
                "integral_term",
                std::f64::consts::PI * x.norm() * ev.quadrature.error_estimate,
            );
            r.warnings.extend(warnings_text(&ev.warnings));
            let radius = radius_of_convergence(b);
            if x.norm() < radius * (1.0 - SERIES_MARGIN) {
                match genfun_series(x, b, GENFUN_SERIES_TERMS) {
                    Ok(s) => {
                        r.output("series", cplx(s.value))
                            .output("series_difference", num((s.value - ev.total).norm()));
                        r.estimate("series_tail", s.tail_estimate);
                    }
                    Err(e) => r.warnings.push(format!("series unavailable: {e}")),
                }
            }
        }
        Err(e) => {
            let status = if matches!(e, HurzetaError::Unsupported(_)) {
                r.output("case", json!(CaseTag::HalfIntUnsupported.as_str()));
                Status::Unsupported
            } else {
                Status::Error
            };
            r.fail_with(status, &e);
        }
    }
    r
}

/// `zeta(2j + 1)` from the Bernoulli-polynomial integral, against direct summation.
pub fn oddzeta_record(j: u32, spec: &QuadratureSpec) -> Record {
    let mut r = Record::new("oddzeta");
    r.input("j", json!(j));
    match odd_zeta_integral(j, spec) {
        Ok(v) => {
            r.output("value", num(v));
            match hurwitz_series_oracle(2 * j + 1, Complex64::new(1.0, 0.0), 1e-17) {
                Ok(o) => {
                    r.output("reference", num(o.re))
                        .output("relative_error", num((v - o.re).abs() / o.re.abs()));
                }
                Err(e) => r.warnings.push(format!("reference unavailable: {e}")),
            }
        }
        Err(e) => {
            r.fail_with(Status::Error, &e);
        }
    }
    r
}
