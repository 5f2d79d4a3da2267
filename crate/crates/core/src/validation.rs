//! Finite-`n` convergence scans for the limit identities behind the closed forms.
//!
//! Each scan evaluates an integral or partial sum at several `n`, compares it
//! with its limit, and fits the decay exponent of the deviation by least
//! squares on `log |deviation|` against `log n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HurzetaError, Result};
use crate::exec;
use crate::hurwitz::{hp_limit, hp_partial_sum, imag_part_integral, real_part_formula};
use crate::quadrature::{cot_pi, integrate_cot_weighted, integrate_oscillatory, QuadratureSpec};
use crate::special_functions::EULER_GAMMA;

/// Largest `n` accepted by the oscillatory scans.
pub const MAX_SCAN_N: u64 = 10_000;
/// Deviations at or below this level count as exact agreement.
pub const EXACT_FLOOR: f64 = 1e-9;
/// Bound on `|observed|` for the zero-integral identity.
pub const ZERO_INTEGRAL_BOUND: f64 = 1e-8;
/// Minimum per-decade improvement for the log-asymptotic residual.
pub const LOG_DECADE_IMPROVEMENT: f64 = 2.0;
/// Relative window around the expected decay exponent.
pub const RATE_WINDOW: (f64, f64) = (0.8, 1.2);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Value { value: f64 },
    /// `offset + (gamma + ln n) / pi`
    LogDivergence { offset: f64 },
}

impl Target {
    pub fn at(&self, n: u64) -> f64 {
        match *self {
            Target::Value { value } => value,
            Target::LogDivergence { offset } => offset + (EULER_GAMMA + (n as f64).ln()) / PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Fewer than three points.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub parameter: String,
    pub n_values: Vec<u64>,
    pub observed: Vec<f64>,
    pub target: Target,
    pub deviations: Vec<f64>,
    /// Fitted `p` in `|deviation| ~ C n^{-p}`.
    pub fitted_rate: Option<f64>,
    pub expected_rate: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Least-squares decay exponent of `deviations` against `n_values`.
pub fn fit_decay_rate(n_values: &[u64], deviations: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = n_values
        .iter()
        .zip(deviations)
        .filter(|(_, d)| d.is_finite() && **d > 0.0)
        .map(|(n, d)| ((*n as f64).ln(), d.ln()))
        .collect();
    if pts.len() < 2 || pts.len() != n_values.len() {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(-sxy / sxx)
}

fn check_n_values(n_values: &[u64], lo: u64, hi: u64) -> Result<()> {
    if n_values.is_empty() {
        return Err(HurzetaError::Usage("n_values must not be empty".into()));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HurzetaError::Usage(
            "n_values must be strictly increasing".into(),
        ));
    }
    if let Some(bad) = n_values.iter().find(|n| **n < lo || **n > hi) {
        return Err(HurzetaError::Domain(format!(
            "n = {bad} outside the scan range [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Runs an oscillatory integral per `n`; failures become NaN plus a note.
fn scan<F>(n_values: &[u64], spec: &QuadratureSpec, integrand: F) -> (Vec<f64>, Vec<String>)
where
    F: Fn(u64, f64) -> f64 + Sync + Send,
{
    let results = exec::map(n_values, |&n| {
        integrate_oscillatory(|u| Complex64::new(integrand(n, u), 0.0), n, spec)
    });
    let mut observed = Vec::with_capacity(n_values.len());
    let mut notes = Vec::new();
    for (n, r) in n_values.iter().zip(results) {
        match r {
            Ok(q) => {
                if !q.converged {
                    notes.push(format!(
                        "n = {n}: quadrature not converged (error {:e})",
                        q.error_estimate
                    ));
                }
                observed.push(q.value.re);
            }
            Err(e) => {
                notes.push(format!("n = {n}: {e}"));
                observed.push(f64::NAN);
            }
        }
    }
    (observed, notes)
}

fn rate_verdict(fitted: Option<f64>, expected: f64, points: usize) -> Verdict {
    if points < 3 {
        return Verdict::Inconclusive;
    }
    match fitted {
        Some(p) if p >= RATE_WINDOW.0 * expected && p <= RATE_WINDOW.1 * expected => Verdict::Pass,
        _ => Verdict::Fail,
    }
}

/// `int_0^1 u^k sin(2 pi n (1-u)) cot(pi (1-u)) du` against its limit
/// (1 for `k = 0`, 1/2 for `k > 0`).
///
/// For `k = 0` and `k = 1` the integral equals its limit at every integer `n`;
/// deviations then sit at the quadrature floor and the scan passes as exact.
pub fn theorem1_scan(k: u32, n_values: &[u64], spec: &QuadratureSpec) -> Result<ConvergenceReport> {
    check_n_values(n_values, 1, MAX_SCAN_N)?;
    let target = if k == 0 { 1.0 } else { 0.5 };
    let (observed, mut notes) = scan(n_values, spec, |n, u| {
        let w = 1.0 - u;
        u.powi(k as i32) * (2.0 * PI * n as f64 * w).sin() * cot_pi(w)
    });
    let deviations: Vec<f64> = observed.iter().map(|o| (o - target).abs()).collect();
    let fitted = fit_decay_rate(n_values, &deviations);
    let verdict = if deviations.iter().all(|d| *d <= EXACT_FLOOR) {
        notes.push("deviation at quadrature floor for every n (exact identity)".into());
        Verdict::Pass
    } else {
        rate_verdict(fitted, 1.0, n_values.len())
    };
    Ok(ConvergenceReport {
        parameter: format!("theorem1 k={k}"),
        n_values: n_values.to_vec(),
        observed,
        target: Target::Value { value: target },
        deviations,
        fitted_rate: fitted,
        expected_rate: Some(1.0),
        verdict,
        notes,
    })
}

/// `int_0^1 (1 - cos(2 pi n (1-u))) cot(pi (1-u)) du`, zero for every integer `n`.
pub fn zero_integral_scan(n_values: &[u64], spec: &QuadratureSpec) -> Result<ConvergenceReport> {
    check_n_values(n_values, 1, MAX_SCAN_N)?;
    let (observed, notes) = scan(n_values, spec, |n, u| {
        let w = 1.0 - u;
        2.0 * (PI * n as f64 * w).sin().powi(2) * cot_pi(w)
    });
    let deviations: Vec<f64> = observed.iter().map(|o| o.abs()).collect();
    let verdict = if deviations.iter().all(|d| *d <= ZERO_INTEGRAL_BOUND) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ConvergenceReport {
        parameter: "zero integral".into(),
        n_values: n_values.to_vec(),
        observed,
        target: Target::Value { value: 0.0 },
        deviations,
        fitted_rate: None,
        expected_rate: None,
        verdict,
        notes,
    })
}

/// `-int_0^1 (u^k - u) cot(pi u) du`, the finite part of the log asymptotics.
pub fn log_asymptotic_offset(k: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(HurzetaError::Domain(format!("need k > 0, got {k}")));
    }
    let q = integrate_cot_weighted(|u| Complex64::new(u.powf(k) - u, 0.0), spec)?;
    Ok(-q.value.re)
}

/// `int_0^1 (1-u)^k (1 - cos 2 pi n u) cot(pi u) du` against
/// `(gamma + ln n) / pi - int_0^1 (u^k - u) cot(pi u) du`.
pub fn log_asymptotic_scan(k: f64, n_values: &[u64], spec: &QuadratureSpec) -> Result<ConvergenceReport> {
    check_n_values(n_values, 10, MAX_SCAN_N)?;
    let offset = log_asymptotic_offset(k, &QuadratureSpec::precise())?;
    let target = Target::LogDivergence { offset };
    let (observed, mut notes) = scan(n_values, spec, |n, u| {
        (1.0 - u).powf(k) * 2.0 * (PI * n as f64 * u).sin().powi(2) * cot_pi(u)
    });
    let deviations: Vec<f64> = observed
        .iter()
        .zip(n_values)
        .map(|(o, n)| (o - target.at(*n)).abs())
        .collect();
    let fitted = fit_decay_rate(n_values, &deviations);
    let verdict = if n_values.len() < 3 {
        Verdict::Inconclusive
    } else {
        let mut ok = true;
        for (i, w) in deviations.windows(2).enumerate() {
            let ratio = w[0] / w[1];
            if !(ratio >= LOG_DECADE_IMPROVEMENT) {
                ok = false;
                notes.push(format!(
                    "improvement {ratio:.3} between n = {} and n = {}",
                    n_values[i],
                    n_values[i + 1]
                ));
            }
        }
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    Ok(ConvergenceReport {
        parameter: format!("log asymptotic k={k}"),
        n_values: n_values.to_vec(),
        observed,
        target,
        deviations,
        fitted_rate: fitted,
        expected_rate: None,
        verdict,
        notes,
    })
}

/// Partial sums `sum_{j=1}^{n} (i j + b)^{-k}` against their closed-form limit.
///
/// For real `b > 0` the limit comes from the separate real-part closed form and
/// imaginary-part integral; otherwise from the combined formula.
pub fn hp_limit_scan(
    k: u32,
    b: Complex64,
    n_values: &[u64],
    spec: &QuadratureSpec,
) -> Result<ConvergenceReport> {
    check_n_values(n_values, 1, u64::MAX)?;
    let limit = if b.im == 0.0 && b.re > 0.0 {
        let re = real_part_formula(k, b.re)?;
        let im = imag_part_integral(k, b.re, spec)?;
        Complex64::new(re, im) - b.powi(-(k as i32))
    } else {
        hp_limit(k, b, spec)?
    };
    let sums = exec::map(n_values, |&n| hp_partial_sum(k, b, n));
    let mut deviations = Vec::with_capacity(n_values.len());
    let mut observed = Vec::with_capacity(n_values.len());
    for s in sums {
        let s = s?;
        observed.push(s.norm());
        deviations.push((s - limit).norm());
    }
    let expected = f64::from(k) - 1.0;
    let fitted = fit_decay_rate(n_values, &deviations);
    Ok(ConvergenceReport {
        parameter: format!("hp limit k={k} b={b}"),
        n_values: n_values.to_vec(),
        observed,
        target: Target::Value {
            value: limit.norm(),
        },
        deviations,
        fitted_rate: fitted,
        expected_rate: Some(expected),
        verdict: rate_verdict(fitted, expected, n_values.len()),
        notes: vec![format!("limit = {limit}")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_known_exponent() {
        let n = [100, 1000, 10000];
        let d: Vec<f64> = n.iter().map(|&n| 3.0 / (n as f64).powi(2)).collect();
        assert!((fit_decay_rate(&n, &d).unwrap() - 2.0).abs() < 1e-12);
        assert!(fit_decay_rate(&n, &[1.0, 0.0, 1.0]).is_none());
    }

    #[test]
    fn theorem1_k0_is_exact() {
        let r = theorem1_scan(0, &[10, 100, 1000], &QuadratureSpec::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.deviations.iter().all(|d| *d < EXACT_FLOOR));
    }

    #[test]
    fn theorem1_k3_decays_like_one_over_n() {
        let r = theorem1_scan(3, &[10, 100, 1000], &QuadratureSpec::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!((r.fitted_rate.unwrap() - 1.0).abs() < 0.05);
    }

    #[test]
    fn theorem1_k1_n1_self_consistent() {
        let coarse = theorem1_scan(1, &[1], &QuadratureSpec::default()).unwrap();
        let fine = theorem1_scan(1, &[1], &QuadratureSpec::precise()).unwrap();
        assert!((coarse.observed[0] - fine.observed[0]).abs() < 1e-10);
        assert_eq!(coarse.verdict, Verdict::Pass);
    }

    #[test]
    fn zero_integral_examples() {
        let r = zero_integral_scan(&[1, 17], &QuadratureSpec::default()).unwrap();
        assert!(r.observed.iter().all(|v| v.abs() <= 1e-9));
        let r = zero_integral_scan(&[100], &QuadratureSpec::default()).unwrap();
        assert!(r.observed[0].abs() <= 1e-8);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn log_scan_k1_offset_vanishes() {
        assert_eq!(log_asymptotic_offset(1.0, &QuadratureSpec::default()).unwrap(), 0.0);
        let r = log_asymptotic_scan(1.0, &[100, 1000, 10000], &QuadratureSpec::precise()).unwrap();
        assert!(r.deviations[2] < 1e-8, "{r:?}");
    }

    #[test]
    fn log_scan_noninteger_order_stabilises() {
        let r = log_asymptotic_scan(2.5, &[100, 1000], &QuadratureSpec::precise()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.deviations[1] < r.deviations[0] / 10.0);
        assert!(r.deviations[1] < 1e-7);
    }

    #[test]
    fn hp_scans_follow_expected_rates() {
        let spec = QuadratureSpec::precise();
        let r = hp_limit_scan(2, Complex64::new(1.0, 0.0), &[100, 1000, 10000], &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let r = hp_limit_scan(4, Complex64::new(0.5, 0.0), &[100, 1000], &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!((r.fitted_rate.unwrap() - 3.0).abs() < 0.1, "{r:?}");
        let r = hp_limit_scan(2, Complex64::new(1.0, 0.5), &[1000], &spec).unwrap();
        // tail of sum_{j>n} (ij+b)^{-2} is about 1/n
        assert!(r.deviations[0] < 1.5e-3 && r.deviations[0] > 0.5e-3, "{r:?}");
    }

    #[test]
    fn scan_ranges_enforced() {
        let spec = QuadratureSpec::default();
        assert!(theorem1_scan(0, &[20_000], &spec).is_err());
        assert!(theorem1_scan(0, &[100, 10], &spec).is_err());
        assert!(log_asymptotic_scan(2.0, &[5], &spec).is_err());
        assert!(log_asymptotic_scan(-1.0, &[100], &spec).is_err());
    }
}
