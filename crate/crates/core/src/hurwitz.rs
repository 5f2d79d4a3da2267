//! Hurwitz zeta `zeta(k, b)` at integer `k >= 2` from polylogarithms of the
//! shift `q = exp(-2 pi i b)` plus one cot-weighted integral.
//!
//! With `c_j = (delta_{1j} + Li_{1-j}(q)) / ((j-1)! (k-j)!)` and
//! `B(u) = exp(-2 pi i b u) sum_j c_j u^{k-j}`:
//!
//! ```text
//! zeta(k, b) = 1/(2 b^k)
//!            + (2 pi i)^k (delta_{1k} + Li_{1-k}(q)) / (4 (k-1)!)
//!            + (2 pi i)^k q / 4 * sum_j c_j
//!            - i (2 pi i)^k / 2 * int_0^1 (B(u) - B(1)) cot(pi u) du
//! ```
//!
//! The integrand vanishes at `u = 1` by construction and at `u = 0` because
//! `B(0) = B(1)`; the latter is checked numerically rather than assumed.
//!
//! Real-shift variants evaluate `sum_{j>=0} (i j + b)^{-k}`, which relates to
//! the Hurwitz function through `zeta(k, -i b) = i^k sum_{j>=0} (i j + b)^{-k}`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{HurzetaError, Result, Warning};
use crate::quadrature::{integrate_cot_weighted, QuadratureResult, QuadratureSpec};
use crate::special_functions::ddouble::{Dd, DdComplex};
use crate::special_functions::{polylog_nonpos, PolylogTable};

/// Largest `|Im b|` accepted by [`hurwitz_zeta`]; keeps `|q|` near `e^{31}`.
pub const IM_CAP: f64 = 5.0;

/// Tolerance for deciding that `b` is an integer.
pub const INT_EPS: f64 = 1e-9;

/// Region covered by the oracle-equivalence property tests.
pub const TESTED_RE: (f64, f64) = (-3.0, 6.0);
pub const TESTED_IM: f64 = 2.5;
pub const TESTED_MAX_K: u32 = 12;

/// Accuracy target relative to `1 + |zeta|`; a larger error bound is flagged.
pub const ACCURACY_TARGET: f64 = 1e-8;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `i^k` from the quadrant, without complex exponentiation.
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Distance from `z` to the nearest integer (complex modulus).
pub fn distance_to_integer(z: Complex64) -> f64 {
    (z - Complex64::new(z.re.round(), 0.0)).norm()
}

/// Evaluation point `(k, b)` with the cached polylog argument `q = exp(-2 pi i b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParams {
    k: u32,
    b: Complex64,
    q: Complex64,
}

impl ZetaParams {
    /// Rejects `k < 2` and the poles `b in {0, -1, -2, ...}`.
    pub fn new(k: u32, b: Complex64) -> Result<Self> {
        if k < 2 {
            return Err(HurzetaError::Domain(format!(
                "order k must be at least 2, got {k}"
            )));
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(HurzetaError::Domain("shift b must be finite".into()));
        }
        if distance_to_integer(b) < INT_EPS && b.re.round() <= 0.0 {
            return Err(HurzetaError::Domain(format!(
                "b = {b} is a pole of zeta(k, b)"
            )));
        }
        let q = (-2.0 * PI * I * b).exp();
        Ok(ZetaParams { k, b, q })
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn b(&self) -> Complex64 {
        self.b
    }
    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn is_integer_shift(&self) -> bool {
        distance_to_integer(self.b) < INT_EPS
    }

    fn require_integral_path(&self) -> Result<()> {
        if self.is_integer_shift() {
            return Err(HurzetaError::Unsupported(format!(
                "integer b = {} puts q = 1 on the polylog pole; use the series/shift path",
                self.b.re.round()
            )));
        }
        Ok(())
    }
}

/// Precomputed `c_j` coefficients of the bracket kernel for one `(k, b)`.
///
/// The coefficients and `B(1)` are held in double-double: `B(u) - B(1)` is
/// often many orders of magnitude below `|B(0)|`, and the difference near
/// `u = 0` would otherwise be pure rounding noise.
#[derive(Debug, Clone)]
pub struct BracketKernel {
    params: ZetaParams,
    /// `li[j-1] = delta_{1j} + Li_{1-j}(q)` for `j = 1..=k`.
    li: Vec<Complex64>,
    /// `poly[p]` multiplies `u^p`, i.e. `c_{k-p}`.
    poly: Vec<DdComplex>,
    coef_sum: DdComplex,
    b_at_one: DdComplex,
    warnings: Vec<Warning>,
}

/// `exp(z) - 1` without cancellation for small `|z|`.
fn exp_m1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * c - 2.0 * half * half,
        z.re.exp() * s,
    )
}

impl BracketKernel {
    pub fn new(params: ZetaParams) -> Result<Self> {
        params.require_integral_path()?;
        let k = params.k;
        let q = DdComplex::from_c64(params.q);
        let table = PolylogTable::shared();
        let mut warnings = Vec::new();
        let mut li = Vec::with_capacity(k as usize);
        for j in 1..=k {
            let r = polylog_nonpos(j - 1, params.q)?;
            warnings.extend(r.warnings);
            li.push(if j == 1 {
                // 1 + q/(1-q) without the cancellation at large |q|
                (DdComplex::ONE - q).recip()
            } else {
                table.row(j - 1)?.eval_dd(q)
            });
        }
        let fact = |n: u32| (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i);
        let poly: Vec<DdComplex> = (0..k)
            .map(|p| {
                let j = k - p;
                let den = Dd::from_biguint(&(fact(j - 1) * fact(k - j)));
                li[(j - 1) as usize].scale(den.recip())
            })
            .collect();
        let sum = poly.iter().fold(DdComplex::ZERO, |acc, &c| acc + c);
        Ok(BracketKernel {
            params,
            li: li.iter().map(|v| v.to_c64()).collect(),
            poly,
            coef_sum: sum,
            b_at_one: q * sum,
            warnings,
        })
    }

    fn poly_at(&self, u: f64) -> DdComplex {
        let x = Dd::new(u);
        self.poly
            .iter()
            .rev()
            .fold(DdComplex::ZERO, |acc, &c| acc.scale(x) + c)
    }

    /// `B(u) = exp(-2 pi i b u) sum_j c_j u^{k-j}`.
    pub fn raw(&self, u: f64) -> Complex64 {
        (-2.0 * PI * I * self.params.b * u).exp() * self.poly_at(u).to_c64()
    }

    /// `B(u) - B(1)`, as `(P(u) - B(1)) + (exp(-2 pi i b u) - 1) P(u)`.
    pub fn eval(&self, u: f64) -> Complex64 {
        if u == 1.0 {
            return Complex64::zero();
        }
        let p = self.poly_at(u);
        let near = (p - self.b_at_one).to_c64();
        near + exp_m1(-2.0 * PI * I * self.params.b * u) * p.to_c64()
    }

    /// `sum_j c_j`, the bracket of the third closed-form term.
    pub fn coefficient_sum(&self) -> Complex64 {
        self.coef_sum.to_c64()
    }

    /// `delta_{1k} + Li_{1-k}(q)`.
    pub fn top_polylog(&self) -> Complex64 {
        self.li[self.params.k as usize - 1]
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// `max |B(u) - B(1)|` over `u = 0.1, 0.2, ..., 0.9`, the yardstick for the
    /// endpoint residue `|B(0) - B(1)|`.
    pub fn endpoint_scale(&self) -> f64 {
        (1..10)
            .map(|i| self.eval(f64::from(i) / 10.0).norm())
            .fold(0.0, f64::max)
    }
}

/// `B(u) - B(1)`, the integrand of the combined formula without the cot weight.
pub fn bracket_kernel(params: &ZetaParams, u: f64) -> Result<Complex64> {
    Ok(BracketKernel::new(*params)?.eval(u))
}

/// Per-term decomposition of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalBreakdown {
    pub k: u32,
    pub b: Complex64,
    /// `1 / (2 b^k)`
    pub term_half_bk: Complex64,
    /// `(2 pi i)^k (delta_{1k} + Li_{1-k}(q)) / (4 (k-1)!)`
    pub term_polylog_single: Complex64,
    /// `(2 pi i)^k q / 4 * sum_j (delta_{1j} + Li_{1-j}(q)) / ((j-1)!(k-j)!)`
    pub term_polylog_sum: Complex64,
    /// `-i (2 pi i)^k / 2 * int_0^1 (B(u) - B(1)) cot(pi u) du`
    pub term_integral: Complex64,
    pub total: Complex64,
    /// Quadrature error through its prefactor plus rounding of the four terms.
    /// Near integer `b` the terms grow like `|1 - q|^{-k}` and cancel.
    pub error_bound: f64,
    pub quadrature: QuadratureResult,
    pub warnings: Vec<Warning>,
}

/// `(2 pi)^k i^k`.
fn two_pi_i_pow(k: u32) -> Complex64 {
    i_pow(k as i64) * (2.0 * PI).powi(k as i32)
}

/// `zeta(k, b)` from the combined closed form.
pub fn hurwitz_zeta(params: &ZetaParams, spec: &QuadratureSpec) -> Result<EvalBreakdown> {
    params.require_integral_path()?;
    let (k, b, q) = (params.k, params.b, params.q);
    if b.im.abs() > IM_CAP {
        return Err(HurzetaError::Range(format!(
            "|Im b| = {} exceeds cap {IM_CAP}; exp(-2 pi i b) leaves working range",
            b.im.abs()
        )));
    }
    let kernel = BracketKernel::new(*params)?;
    let quad = integrate_cot_weighted(|u| kernel.eval(u), spec)?;

    let tpk = two_pi_i_pow(k);
    let term_half_bk = 0.5 * b.powi(-(k as i32));
    let term_polylog_single = tpk * kernel.top_polylog() / (4.0 * factorial(k - 1));
    let term_polylog_sum = tpk * q * kernel.coefficient_sum() / 4.0;
    let term_integral = -I * tpk * quad.value / 2.0;
    let total = term_half_bk + term_polylog_single + term_polylog_sum + term_integral;
    let mass = term_half_bk.norm()
        + term_polylog_single.norm()
        + term_polylog_sum.norm()
        + term_integral.norm();
    let error_bound = tpk.norm() / 2.0 * quad.error_estimate + 8.0 * f64::EPSILON * mass;

    let mut warnings = kernel.warnings().to_vec();
    warnings.extend(quad.warnings.iter().cloned());
    if error_bound > ACCURACY_TARGET * (1.0 + total.norm()) {
        warnings.push(Warning::Cancellation {
            error_bound,
            magnitude: total.norm(),
        });
    }
    if k > TESTED_MAX_K || b.re < TESTED_RE.0 || b.re > TESTED_RE.1 || b.im.abs() > TESTED_IM {
        warnings.push(Warning::OutsideTestedRegion {
            detail: format!(
                "tested: k <= {TESTED_MAX_K}, Re b in [{}, {}], |Im b| <= {TESTED_IM}",
                TESTED_RE.0, TESTED_RE.1
            ),
        });
    }
    Ok(EvalBreakdown {
        k,
        b,
        term_half_bk,
        term_polylog_single,
        term_polylog_sum,
        term_integral,
        total,
        error_bound,
        quadrature: quad,
        warnings,
    })
}

fn require_real_shift(k: u32, b: f64) -> Result<()> {
    if k < 2 {
        return Err(HurzetaError::Domain(format!(
            "order k must be at least 2, got {k}"
        )));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(HurzetaError::Domain(format!(
            "real shift b must be positive, got {b}"
        )));
    }
    Ok(())
}

/// `Re sum_{j>=0} (i j + b)^{-k}` for real `b > 0`, fully in closed form.
pub fn real_part_formula(k: u32, b: f64) -> Result<f64> {
    require_real_shift(k, b)?;
    let z = Complex64::new((-2.0 * PI * b).exp(), 0.0);
    let mut sum = 0.0;
    let mut top = 0.0;
    for j in 1..=k {
        let delta = if j == 1 { 1.0 } else { 0.0 };
        let li = delta + polylog_nonpos(j - 1, z)?.value.re;
        sum += li / (factorial(j - 1) * factorial(k - j));
        if j == k {
            top = li;
        }
    }
    let tp = (2.0 * PI).powi(k as i32);
    Ok(0.5 * b.powi(-(k as i32)) + tp * top / (4.0 * factorial(k - 1)) + tp * z.re * sum / 4.0)
}

/// `Im sum_{j>=0} (i j + b)^{-k}` for real `b > 0`: `-(2 pi)^k / 2` times the
/// cot-weighted integral of the bracket kernel at Hurwitz shift `-i b`.
pub fn imag_part_integral(k: u32, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    require_real_shift(k, b)?;
    let params = ZetaParams::new(k, Complex64::new(0.0, -b))?;
    let kernel = BracketKernel::new(params)?;
    let quad = integrate_cot_weighted(|u| kernel.eval(u), spec)?;
    Ok(-(2.0 * PI).powi(k as i32) / 2.0 * quad.value.re)
}

/// Term budget for [`hurwitz_series_oracle`].
pub const ORACLE_MAX_TERMS: u64 = 10_000_000;

/// Direct summation `sum_{j=0}^{N} (j + b)^{-k}` plus the midpoint tail
/// `int_{N+1/2}^inf (t + b)^{-k} dt`.
///
/// `N` is the smallest index for which the midpoint remainder bound
/// `k / (24 (N - 1/2 + Re b)^{k+1})` is at most `tol`.
pub fn hurwitz_series_oracle(k: u32, b: Complex64, tol: f64) -> Result<Complex64> {
    if k < 2 {
        return Err(HurzetaError::Domain(format!(
            "order k must be at least 2, got {k}"
        )));
    }
    if !(b.re > 0.0) {
        return Err(HurzetaError::Domain(format!(
            "series oracle needs Re b > 0, got {b}"
        )));
    }
    if !(tol > 0.0) {
        return Err(HurzetaError::Usage("oracle tolerance must be positive".into()));
    }
    let kf = f64::from(k);
    // (N - 1/2 + Re b) >= (k / (24 tol))^{1/(k+1)}
    let needed = (kf / (24.0 * tol)).powf(1.0 / (kf + 1.0)) + 0.5 - b.re;
    let n = needed.ceil().max(1.0);
    if n > ORACLE_MAX_TERMS as f64 {
        return Err(HurzetaError::Capacity {
            what: "series oracle terms",
            requested: n.min(u64::MAX as f64) as u64,
            limit: ORACLE_MAX_TERMS,
        });
    }
    let n = n as u64;
    let mut sum = Complex64::zero();
    let mut comp = Complex64::zero();
    for j in (0..=n).rev() {
        let t = (b + j as f64).powi(-(k as i32));
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    let tail = (b + (n as f64 + 0.5)).powi(1 - k as i32) / (kf - 1.0);
    Ok(sum + tail)
}

/// Reference value for any admissible `b`: shifts `b` right until `Re b >= 1`,
/// sums the skipped terms directly, then applies the oracle.
pub fn hurwitz_reference(k: u32, b: Complex64, tol: f64) -> Result<Complex64> {
    ZetaParams::new(k, b)?;
    let mut head = Complex64::zero();
    let mut shifted = b;
    while shifted.re < 1.0 {
        head += shifted.powi(-(k as i32));
        shifted += 1.0;
    }
    Ok(head + hurwitz_series_oracle(k, shifted, tol)?)
}

/// One term `1 / (i j + b)^k` of the imaginary-step progression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub j: u64,
    pub value: Complex64,
}

impl HPoint {
    pub fn new(k: u32, b: Complex64, j: u64) -> Result<Self> {
        let d = I * j as f64 + b;
        if d.norm() == 0.0 {
            return Err(HurzetaError::Domain(format!(
                "i*{j} + b vanishes for b = {b}"
            )));
        }
        Ok(HPoint {
            j,
            value: d.powi(-(k as i32)),
        })
    }
}

/// `sum_{j=1}^{n} (i j + b)^{-k}`, summed from the smallest term up.
pub fn hp_partial_sum(k: u32, b: Complex64, n: u64) -> Result<Complex64> {
    if k < 1 {
        return Err(HurzetaError::Domain("order k must be at least 1".into()));
    }
    let mut sum = Complex64::zero();
    for j in (1..=n).rev() {
        sum += HPoint::new(k, b, j)?.value;
    }
    Ok(sum)
}

/// `lim_n sum_{j=1}^{n} (i j + b)^{-k} = i^{-k} zeta(k, -i b) - b^{-k}`, through
/// the combined formula.
pub fn hp_limit(k: u32, b: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let params = ZetaParams::new(k, -I * b)?;
    let z = hurwitz_zeta(&params, spec)?.total;
    Ok(i_pow(-(k as i64)) * z - b.powi(-(k as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::CATALAN;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_vanishes_at_one_and_zero() {
        let params = ZetaParams::new(2, c(0.3, 0.0)).unwrap();
        assert_eq!(bracket_kernel(&params, 1.0).unwrap(), Complex64::zero());
        let at0 = bracket_kernel(&params, 0.0).unwrap();
        assert!(at0.norm() < 1e-14, "{at0}");
    }

    #[test]
    fn kernel_midpoint_matches_hand_expansion() {
        // k = 2: B(u) = e^{-2 pi i b u} ((1 + Li_0(q)) u + Li_{-1}(q))
        let b = 0.25;
        let params = ZetaParams::new(2, c(b, 0.0)).unwrap();
        let q = params.q();
        let li0 = q / (1.0 - q);
        let li1 = q / ((1.0 - q) * (1.0 - q));
        let braw = |u: f64| (-2.0 * PI * I * b * u).exp() * ((1.0 + li0) * u + li1);
        let expected = braw(0.5) - braw(1.0);
        let got = bracket_kernel(&params, 0.5).unwrap();
        assert!((got - expected).norm() < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn special_value_five_quarters() {
        let params = ZetaParams::new(2, c(1.25, 0.0)).unwrap();
        let r = hurwitz_zeta(&params, &QuadratureSpec::precise()).unwrap();
        let expected = -16.0 + PI * PI + 8.0 * CATALAN;
        assert!((r.total.re - expected).abs() / expected < 1e-10, "{}", r.total);
        assert!(r.total.im.abs() < 1e-12);
        let sum = r.term_half_bk + r.term_polylog_single + r.term_polylog_sum + r.term_integral;
        assert_eq!(sum, r.total);
    }

    #[test]
    fn integer_shift_is_unsupported_and_poles_are_domain() {
        let params = ZetaParams::new(2, c(1.0, 0.0)).unwrap();
        assert!(matches!(
            hurwitz_zeta(&params, &QuadratureSpec::default()),
            Err(HurzetaError::Unsupported(_))
        ));
        assert!(ZetaParams::new(2, c(0.0, 0.0)).is_err());
        assert!(ZetaParams::new(3, c(-2.0, 0.0)).is_err());
        assert!(ZetaParams::new(1, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn imaginary_cap_is_range_error() {
        let params = ZetaParams::new(2, c(0.5, 6.0)).unwrap();
        assert!(matches!(
            hurwitz_zeta(&params, &QuadratureSpec::default()),
            Err(HurzetaError::Range(_))
        ));
    }

    #[test]
    fn oracle_even_zeta_anchors() {
        let z2 = hurwitz_series_oracle(2, c(1.0, 0.0), 1e-10).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-10);
        let z6 = hurwitz_series_oracle(6, c(1.0, 0.0), 1e-12).unwrap();
        assert!((z6.re - PI.powi(6) / 945.0).abs() < 1e-12);
        let g = hurwitz_series_oracle(2, c(1.25, 0.0), 1e-10).unwrap();
        assert!((g.re - (-16.0 + PI * PI + 8.0 * CATALAN)).abs() < 1e-10);
    }

    #[test]
    fn oracle_rejects_bad_inputs() {
        assert!(hurwitz_series_oracle(2, c(-0.5, 0.0), 1e-10).is_err());
        assert!(matches!(
            hurwitz_series_oracle(2, c(1.0, 0.0), 1e-30),
            Err(HurzetaError::Capacity { .. })
        ));
    }

    #[test]
    fn partial_sum_single_term_and_zero_denominator() {
        let s = hp_partial_sum(2, c(1.0, 0.0), 1).unwrap();
        assert!((s - c(0.0, -0.5)).norm() < 1e-16);
        assert!(matches!(
            hp_partial_sum(2, c(0.0, -3.0), 5),
            Err(HurzetaError::Domain(_))
        ));
    }

    #[test]
    fn order_one_imaginary_part_grows_like_minus_log() {
        let a = hp_partial_sum(1, c(1.0, 0.0), 1_000).unwrap();
        let b = hp_partial_sum(1, c(1.0, 0.0), 100_000).unwrap();
        // real part settles, imaginary part drops by about ln(100)
        assert!((a.re - b.re).abs() < 1e-3);
        assert!(((a.im - b.im) - 100f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn i_pow_cycles() {
        assert_eq!(i_pow(0), c(1.0, 0.0));
        assert_eq!(i_pow(5), c(0.0, 1.0));
        assert_eq!(i_pow(-1), c(0.0, -1.0));
        assert_eq!(i_pow(-2), c(-1.0, 0.0));
    }
}
