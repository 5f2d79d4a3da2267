//! Generating function `f(x, b) = sum_{k>=2} x^k (zeta(k, b) - b^{-k})`.
//!
//! The closed form splits on the arithmetic nature of `b`:
//!
//! | case        | rational part            | trig part                                      | integrand `g(u)` (times `-pi x cot(pi u)`)                 |
//! |-------------|--------------------------|------------------------------------------------|------------------------------------------------------------|
//! | `2b ∉ Z`    | `x^2 / (2b(x-b))`        | `-pi x sin(pi x) / (2 sin(pi b) sin(pi(x-b)))` | `sin(2pi(x-b)u)/sin(2pi(x-b)) - sin(2pi b u)/sin(2pi b)`   |
//! | `b = 0`     | `1/2`                    | `-(pi x / 2) cot(pi x)`                        | `sin(2pi x u)/sin(2pi x) - u`                              |
//! | `b ∈ Z+`    | `x^2 / (2b(x-b))`        | `-(pi x / 2) cot(pi x)`                        | `sin(2pi(x-b)u)/sin(2pi x) - u cos(2pi b u)`               |
//! | `b ∈ Z-`    | `1 + x^2 / (2b(x-b))`    | `-(pi x / 2) cot(pi x)`                        | same as `Z+`                                               |
//!
//! Half-integer `b` has no closed form here and is rejected. For negative
//! integer `b` the coefficient series skips the vanishing term `j + b = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Flagged, HurzetaError, Result, Warning};
use crate::exec;
use crate::hurwitz::{distance_to_integer, hurwitz_series_oracle};
use crate::quadrature::{integrate_cot_weighted, QuadratureResult, QuadratureSpec};
use crate::special_functions::BernoulliTable;

/// Tolerance for integer / half-integer membership.
pub const GENFUN_INT_EPS: f64 = 1e-9;
/// Minimum distance to any singular locus of the closed form.
pub const SAFETY_THRESHOLD: f64 = 1e-6;
/// Relative radius margin required by [`genfun_series`].
pub const SERIES_MARGIN: f64 = 0.1;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Generic,
    BZero,
    BPosInt,
    BNegInt,
    HalfIntUnsupported,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Generic => "generic",
            CaseTag::BZero => "b_zero",
            CaseTag::BPosInt => "b_pos_int",
            CaseTag::BNegInt => "b_neg_int",
            CaseTag::HalfIntUnsupported => "half_int_unsupported",
        }
    }
}

/// Distances from `(x, b)` to the loci where closed-form pieces blow up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProximityFlags {
    /// `|x - b|`
    pub x_eq_b: f64,
    /// distance of `2b` to the integers
    pub two_b_integer: f64,
    /// distance of `2(x - b)` to the integers
    pub two_x_minus_b_integer: f64,
    /// distance of `2x` to the non-zero integers
    pub two_x_nonzero_integer: f64,
    pub sin_pi_x: f64,
    pub sin_pi_x_minus_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenFunCase {
    pub tag: CaseTag,
    pub proximity: ProximityFlags,
}

fn distance_to_nonzero_integer(z: Complex64) -> f64 {
    if z.re.round() != 0.0 {
        distance_to_integer(z)
    } else {
        (z - 1.0).norm().min((z + 1.0).norm())
    }
}

/// Which closed-form branch applies to `b`, plus distances to singular loci.
pub fn classify_case(x: Complex64, b: Complex64) -> GenFunCase {
    let tag = if distance_to_integer(b) < GENFUN_INT_EPS {
        match b.re.round() {
            0.0 => CaseTag::BZero,
            r if r > 0.0 => CaseTag::BPosInt,
            _ => CaseTag::BNegInt,
        }
    } else if distance_to_integer(2.0 * b) < GENFUN_INT_EPS {
        CaseTag::HalfIntUnsupported
    } else {
        CaseTag::Generic
    };
    let proximity = ProximityFlags {
        x_eq_b: (x - b).norm(),
        two_b_integer: distance_to_integer(2.0 * b),
        two_x_minus_b_integer: distance_to_integer(2.0 * (x - b)),
        two_x_nonzero_integer: distance_to_nonzero_integer(2.0 * x),
        sin_pi_x: (PI * x).sin().norm(),
        sin_pi_x_minus_b: (PI * (x - b)).sin().norm(),
    };
    GenFunCase { tag, proximity }
}

/// One closed-form evaluation with its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct GenFunEval {
    pub x: Complex64,
    pub b: Complex64,
    pub case: GenFunCase,
    pub rational_term: Complex64,
    pub trig_term: Complex64,
    pub integral_term: Complex64,
    pub total: Complex64,
    pub quadrature: QuadratureResult,
    pub warnings: Vec<Warning>,
}

fn check_locus(name: &str, distance: f64) -> Result<()> {
    if distance < SAFETY_THRESHOLD {
        Err(HurzetaError::IllConditioned {
            locus: name.to_string(),
            distance,
        })
    } else {
        Ok(())
    }
}

fn trivial_quadrature() -> QuadratureResult {
    QuadratureResult {
        value: Complex64::zero(),
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
        warnings: Vec::new(),
    }
}

/// Closed-form `f(x, b)` on the branch selected by [`classify_case`].
pub fn genfun_closed(x: Complex64, b: Complex64, spec: &QuadratureSpec) -> Result<GenFunEval> {
    let case = classify_case(x, b);
    let p = case.proximity;
    let mut warnings = Vec::new();
    if case.tag == CaseTag::HalfIntUnsupported {
        return Err(HurzetaError::Unsupported(format!(
            "half-integer b = {b} has no closed form"
        )));
    }
    if x == Complex64::zero() {
        let z = Complex64::zero();
        return Ok(GenFunEval {
            x,
            b,
            case,
            rational_term: z,
            trig_term: z,
            integral_term: z,
            total: z,
            quadrature: trivial_quadrature(),
            warnings,
        });
    }

    let (rational_term, trig_term, quad, integral_factor) = match case.tag {
        CaseTag::Generic => {
            check_locus("x = b", p.x_eq_b)?;
            check_locus("2(x - b) integer", p.two_x_minus_b_integer)?;
            if p.two_b_integer < SAFETY_THRESHOLD {
                warnings.push(Warning::NearCaseBoundary {
                    locus: "2b integer".into(),
                    distance: p.two_b_integer,
                });
            }
            if (x - 2.0 * b).norm() <= 1e-12 * b.norm() {
                warnings.push(Warning::VanishingIntegralLocus);
            }
            let d = x - b;
            let rational = x * x / (2.0 * b * d);
            let trig = -PI * x * (PI * x).sin() / (2.0 * (PI * b).sin() * (PI * d).sin());
            let sd = (2.0 * PI * d).sin();
            let sb = (2.0 * PI * b).sin();
            let quad = integrate_cot_weighted(
                |u| (2.0 * PI * d * u).sin() / sd - (2.0 * PI * b * u).sin() / sb,
                spec,
            )?;
            (rational, trig, quad, -PI * x)
        }
        CaseTag::BZero => {
            check_locus("2x non-zero integer", p.two_x_nonzero_integer)?;
            let trig = -(PI * x / 2.0) * (PI * x).cos() / (PI * x).sin();
            let s2x = (2.0 * PI * x).sin();
            let quad =
                integrate_cot_weighted(|u| (2.0 * PI * x * u).sin() / s2x - u, spec)?;
            (Complex64::new(0.5, 0.0), trig, quad, -PI * x)
        }
        CaseTag::BPosInt | CaseTag::BNegInt => {
            let m = b.re.round();
            check_locus("x = b", (x - m).norm())?;
            check_locus("2x non-zero integer", p.two_x_nonzero_integer)?;
            if distance_to_integer(b) > 0.0 {
                warnings.push(Warning::NearCaseBoundary {
                    locus: "b integer".into(),
                    distance: distance_to_integer(b),
                });
            }
            let offset = if case.tag == CaseTag::BNegInt { 1.0 } else { 0.0 };
            let rational = offset + x * x / (2.0 * m * (x - m));
            let trig = -(PI * x / 2.0) * (PI * x).cos() / (PI * x).sin();
            let s2x = (2.0 * PI * x).sin();
            let quad = integrate_cot_weighted(
                |u| (2.0 * PI * (x - m) * u).sin() / s2x - u * (2.0 * PI * m * u).cos(),
                spec,
            )?;
            (rational, trig, quad, -PI * x)
        }
        CaseTag::HalfIntUnsupported => unreachable!("rejected above"),
    };
    let integral_term = integral_factor * quad.value;
    warnings.extend(quad.warnings.iter().cloned());
    Ok(GenFunEval {
        x,
        b,
        case,
        rational_term,
        trig_term,
        integral_term,
        total: rational_term + trig_term + integral_term,
        quadrature: quad,
        warnings,
    })
}

/// `r(b) = min_{j>=1, j+b != 0} |j + b|`, the radius of convergence in `x`.
pub fn radius_of_convergence(b: Complex64) -> f64 {
    let start = ((-b.re).floor() - 1.0).max(1.0) as u64;
    (start..start + 4)
        .map(|j| (b + j as f64).norm())
        .filter(|d| *d > GENFUN_INT_EPS)
        .fold(f64::INFINITY, f64::min)
}

/// `sum_{j>=1, j+b != 0} (j + b)^{-k}`, the `x^k` coefficient of `f`.
pub fn series_coefficient(k: u32, b: Complex64) -> Result<Complex64> {
    let mut head = Complex64::zero();
    let mut shifted = b + 1.0;
    while shifted.re < 1.0 {
        if shifted.norm() > GENFUN_INT_EPS {
            head += shifted.powi(-(k as i32));
        }
        shifted += 1.0;
    }
    let lead = shifted.norm().powi(-(k as i32));
    let tol = (1e-16 * lead).max(1e-300);
    Ok(head + hurwitz_series_oracle(k, shifted, tol)?)
}

/// Truncated power series with a geometric tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub kmax: u32,
}

/// `sum_{k=2}^{kmax} x^k c_k(b)` with coefficients from the direct-summation oracle.
pub fn genfun_series(x: Complex64, b: Complex64, kmax: u32) -> Result<SeriesEval> {
    let r = radius_of_convergence(b);
    if x.norm() >= r * (1.0 - SERIES_MARGIN) {
        return Err(HurzetaError::Domain(format!(
            "|x| = {} outside the series radius {r} (margin {SERIES_MARGIN})",
            x.norm()
        )));
    }
    let mut value = Complex64::zero();
    let mut xp = x;
    for k in 2..=kmax {
        xp *= x;
        if xp == Complex64::zero() {
            break;
        }
        value += xp * series_coefficient(k, b)?;
    }
    let rho = x.norm() / r;
    let next = if x == Complex64::zero() {
        0.0
    } else {
        (xp * x * series_coefficient(kmax + 1, b)?).norm()
    };
    Ok(SeriesEval {
        value,
        tail_estimate: next / (1.0 - rho),
        kmax,
    })
}

/// Exact coefficients of `sum_{p=0}^{j} B_{2p} (2 - 2^{2p}) u^{2j-2p+1} / ((2p)! (2j-2p+1)!)`
/// as `(power, coefficient)` pairs.
pub fn odd_zeta_polynomial(j: u32, table: &BernoulliTable) -> Result<Vec<(u32, BigRational)>> {
    let fact = |n: u32| -> BigRational {
        BigRational::from_integer((1..=n as u64).map(num_bigint::BigInt::from).product())
    };
    let mut out = Vec::with_capacity(j as usize + 1);
    for p in 0..=j {
        let b2p = table.get(2 * p as usize)?;
        let two_pow = BigRational::from_integer(num_bigint::BigInt::from(1u8) << (2 * p) as usize);
        let factor = BigRational::from_integer(2.into()) - two_pow;
        let c = b2p * factor / (fact(2 * p) * fact(2 * j - 2 * p + 1));
        out.push((2 * j - 2 * p + 1, c));
    }
    Ok(out)
}

pub const ODD_ZETA_MAX_J: u32 = 10;

/// `zeta(2j + 1)` from its cot-weighted Bernoulli-polynomial integral.
pub fn odd_zeta_integral(j: u32, spec: &QuadratureSpec) -> Result<f64> {
    if !(1..=ODD_ZETA_MAX_J).contains(&j) {
        return Err(HurzetaError::Domain(format!(
            "odd zeta representation supports 1 <= j <= {ODD_ZETA_MAX_J}, got {j}"
        )));
    }
    let poly = odd_zeta_polynomial(j, BernoulliTable::shared())?;
    let at_one: BigRational = poly.iter().map(|(_, c)| c.clone()).sum();
    if !at_one.is_zero() {
        return Err(HurzetaError::Divergence {
            endpoint: 1.0,
            value: at_one.to_f64().unwrap_or(f64::NAN).abs(),
            scale: 1.0,
        });
    }
    let mut dense = vec![0.0; 2 * j as usize + 2];
    for (power, c) in &poly {
        dense[*power as usize] = c.to_f64().unwrap_or(f64::NAN);
    }
    let quad = integrate_cot_weighted(
        |u| Complex64::new(dense.iter().rev().fold(0.0, |acc, &c| acc * u + c), 0.0),
        spec,
    )?;
    let sign = if j.is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok(sign * (2.0 * PI).powi(2 * j as i32 + 1) / 2.0 * quad.value.re)
}

/// `c sinh(c u) / sinh(c)`.
pub fn sinh_kernel(c: Complex64, u: f64) -> Result<Complex64> {
    if c == Complex64::zero() {
        return Err(HurzetaError::Domain("sinh kernel needs c != 0".into()));
    }
    let m = c.im / PI;
    if c.re.abs() < 1e-12 && distance_to_integer(Complex64::new(m, 0.0)) < 1e-12 {
        return Err(HurzetaError::Domain(format!(
            "sinh(c) vanishes at c = {c} (i pi multiple)"
        )));
    }
    Ok(c * (c * u).sinh() / c.sinh())
}

/// `zeta(k, b) = b^{-k} + [x^k] f(x, b)`, the coefficient taken by averaging
/// `f(x) x^{-k}` over `nodes` points on `|x| = radius` (offset half a step
/// off the real axis).
pub fn zeta_from_genfun(k: u32, b: Complex64, radius: f64, nodes: usize) -> Result<Flagged<Complex64>> {
    if k < 2 {
        return Err(HurzetaError::Domain(format!(
            "order k must be at least 2, got {k}"
        )));
    }
    if distance_to_integer(b) < GENFUN_INT_EPS && b.re.round() <= 0.0 {
        return Err(HurzetaError::Domain(format!(
            "b = {b} is a pole of zeta(k, b)"
        )));
    }
    let r = radius_of_convergence(b);
    if !(radius > 0.0 && radius < r) {
        return Err(HurzetaError::Domain(format!(
            "radius {radius} must lie in (0, {r})"
        )));
    }
    if nodes < 4 * k as usize {
        return Err(HurzetaError::Usage(format!(
            "need at least 4k = {} nodes, got {nodes}",
            4 * k
        )));
    }
    let spec = QuadratureSpec::precise();
    let coefficient = |rad: f64| -> Result<Complex64> {
        let idx: Vec<usize> = (0..nodes).collect();
        let vals = exec::map(&idx, |&n| {
            let theta = 2.0 * PI * (n as f64 + 0.5) / nodes as f64;
            let x = Complex64::from_polar(rad, theta);
            genfun_closed(x, b, &spec).map(|e| e.total * (-(k as f64) * I * theta).exp())
        });
        let mut acc = Complex64::zero();
        for v in vals {
            acc += v?;
        }
        Ok(acc / (nodes as f64 * rad.powi(k as i32)))
    };
    let primary = coefficient(radius)?;
    let check = coefficient(0.5 * radius)?;
    let mut out = Flagged::clean(b.powi(-(k as i32)) + primary);
    let change = (primary - check).norm() / primary.norm().max(f64::MIN_POSITIVE);
    if change > 1e-4 {
        out.warnings.push(Warning::UnstableCoefficient {
            relative_change: change,
        });
    }
    Ok(out)
}

/// Real and imaginary parts of `sum_{k>=2} x^k sum_{j>=1} (i j + b)^{-k}` for
/// real `x`, `b`: the exponential closed form and the hyperbolic integral.
pub fn genfun_parts_real_imag(x: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    const GUARD: f64 = 1e-9;
    if b.abs() < GUARD {
        return Err(HurzetaError::IllConditioned {
            locus: "b = 0".into(),
            distance: b.abs(),
        });
    }
    if (x - b).abs() < GUARD {
        return Err(HurzetaError::IllConditioned {
            locus: "x = b".into(),
            distance: (x - b).abs(),
        });
    }
    let tp = 2.0 * PI;
    let re = x * x / (2.0 * b * (x - b))
        + PI * x * (tp * x).exp_m1() / ((-tp * b).exp_m1() * ((tp * x).exp() - (tp * b).exp()));
    let d = x - b;
    let sd = (tp * d).sinh();
    let sb = (tp * b).sinh();
    let quad = integrate_cot_weighted(
        |u| Complex64::new((tp * d * u).sinh() / sd - (tp * b * u).sinh() / sb, 0.0),
        spec,
    )?;
    Ok((re, PI * x * quad.value.re))
}
