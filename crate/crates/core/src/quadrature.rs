//! Adaptive integration on `(0, 1)` for complex-valued integrands.
//!
//! Everything is built on an adaptive Gauss-Kronrod 10/21 pair. Both rules are
//! open (no node sits on a panel edge), so integrands singular at 0 or 1 are
//! never sampled there. [`integrate_cot_weighted`] adds an analytic treatment
//! of the `cot(pi u)` poles for integrands that vanish at both ends.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{HurzetaError, Result, Warning};

/// Tolerances and budget for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Bisections allowed beyond the initial panels.
    pub max_subdivisions: usize,
    /// Half-width of the endpoint neighbourhoods handled by local expansion.
    pub endpoint_margin: f64,
    /// `|g(0)|`, `|g(1)|` must not exceed this multiple of the probe scale.
    pub endpoint_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_subdivisions: 200,
            endpoint_margin: 1e-8,
            endpoint_tol: 1e-9,
        }
    }
}

impl QuadratureSpec {
    /// Tight settings used where the integral is multiplied by a large prefactor.
    pub fn precise() -> Self {
        QuadratureSpec {
            rel_tol: 1e-14,
            abs_tol: 1e-16,
            max_subdivisions: 2000,
            ..QuadratureSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(self.rel_tol) && positive(self.abs_tol) && positive(self.endpoint_tol)) {
            return Err(HurzetaError::Usage(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if !(positive(self.endpoint_margin) && self.endpoint_margin < 0.25) {
            return Err(HurzetaError::Usage(
                "endpoint_margin must lie in (0, 0.25)".into(),
            ));
        }
        Ok(())
    }

    fn tolerance(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub warnings: Vec<Warning>,
}

// Kronrod abscissae on [-1, 1], positive half; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    resabs: f64,
}

impl Panel {
    fn at_roundoff(&self) -> bool {
        self.error <= 50.0 * f64::EPSILON * self.resabs || (self.b - self.a) < 1e-15
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |u: f64| -> Result<Complex64> {
        let v = f(u);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(HurzetaError::Evaluation { node: u })
        }
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::zero();
    let mut resabs = fc.norm() * WGK[10];
    for i in 0..10 {
        let dx = half * XGK[i];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let s = f1 + f2;
        kronrod += s * WGK[i];
        resabs += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            gauss += s * WG[i / 2];
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
        resabs: resabs * half.abs(),
    })
}

const NODES_PER_PANEL: usize = 21;

/// Compensated sum of panel contributions in left-to-right order.
fn sum_panels(panels: &mut [Panel]) -> (Complex64, f64) {
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut sum = Complex64::zero();
    let mut comp = Complex64::zero();
    let mut err = 0.0;
    for p in panels.iter() {
        let t = sum + p.value;
        let c_re = if sum.re.abs() >= p.value.re.abs() {
            (sum.re - t.re) + p.value.re
        } else {
            (p.value.re - t.re) + sum.re
        };
        let c_im = if sum.im.abs() >= p.value.im.abs() {
            (sum.im - t.im) + p.value.im
        } else {
            (p.value.im - t.im) + sum.im
        };
        comp += Complex64::new(c_re, c_im);
        sum = t;
        err += p.error;
    }
    (sum + comp, err)
}

/// Greedy bisection of the worst panel until the summed estimate meets tolerance.
fn adaptive<F>(f: &F, initial: &[(f64, f64)], spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    spec.validate()?;
    let mut heap = BinaryHeap::with_capacity(initial.len() + spec.max_subdivisions + 1);
    let mut done: Vec<Panel> = Vec::new();
    let mut value = Complex64::zero();
    let mut error = 0.0;
    let mut evaluations = 0;
    for &(a, b) in initial {
        let p = gk21(f, a, b)?;
        evaluations += NODES_PER_PANEL;
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    let mut splits = 0;
    while error > spec.tolerance(value) && splits < spec.max_subdivisions {
        let Some(worst) = heap.pop() else { break };
        if worst.at_roundoff() {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        evaluations += 2 * NODES_PER_PANEL;
        splits += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    done.extend(heap);
    let (value, error) = sum_panels(&mut done);
    let tolerance = spec.tolerance(value);
    let converged = error <= tolerance;
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(Warning::QuadratureNotConverged {
            error_estimate: error,
            tolerance,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
        converged,
        warnings,
    })
}

/// `int_0^1 f(u) du` for `f` finite on the open interval.
pub fn integrate_open<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    adaptive(&f, &[(0.0, 0.5), (0.5, 1.0)], spec)
}

/// `cot(pi u)` with the reflection `cot(pi u) = -cot(pi (1 - u))` on the upper
/// half, where `1 - u` is exact.
pub fn cot_pi(u: f64) -> f64 {
    if u <= 0.5 {
        1.0 / (PI * u).tan()
    } else {
        -1.0 / (PI * (1.0 - u)).tan()
    }
}

// int_0^m u cot(pi u) du and int_0^m u^2 cot(pi u) du, leading two series terms.
fn moment1(m: f64) -> f64 {
    m / PI - PI * m.powi(3) / 9.0
}
fn moment2(m: f64) -> f64 {
    m * m / (2.0 * PI) - PI * m.powi(4) / 12.0
}

/// Probe scale: max `|g|` on a 15-point interior grid.
pub fn probe_scale<G>(g: &G) -> f64
where
    G: Fn(f64) -> Complex64 + ?Sized,
{
    (1..16)
        .map(|i| g(i as f64 / 16.0).norm())
        .fold(0.0, f64::max)
}

/// `int_0^1 g(u) cot(pi u) du` for `g` vanishing at both endpoints.
///
/// The interior `[m, 1 - m]` goes through the adaptive rule. On `[0, m]` and
/// `[1 - m, 1]` the pole part of `cot` is integrated against a quadratic
/// interpolant of `g` through three points; the constant term of the
/// interpolant is the endpoint residue that the precondition requires to be zero.
pub fn integrate_cot_weighted<G>(g: G, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let scale = probe_scale(&g);
    let g0 = g(0.0);
    let g1 = g(1.0);
    let mut evaluations = 17;
    for (endpoint, v) in [(0.0, g0), (1.0, g1)] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(HurzetaError::Evaluation { node: endpoint });
        }
        if v.norm() > spec.endpoint_tol * scale {
            return Err(HurzetaError::Divergence {
                endpoint,
                value: v.norm(),
                scale,
            });
        }
    }
    if scale == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::zero(),
            error_estimate: 0.0,
            evaluations,
            converged: true,
            warnings: Vec::new(),
        });
    }

    let m = spec.endpoint_margin;
    let integrand = |u: f64| g(u) * cot_pi(u);
    let mut interior = adaptive(&integrand, &[(m, 0.5), (0.5, 1.0 - m)], spec)?;

    // Quadratic through v = 0, m/2, m: slope and curvature in the local variable.
    let local = |p0: Complex64, ph: Complex64, pm: Complex64| {
        let slope = (4.0 * ph - 3.0 * p0 - pm) / m;
        let curv = 2.0 * (pm - 2.0 * ph + p0) / (m * m);
        slope * moment1(m) + curv * moment2(m)
    };
    let left = local(g0, g(0.5 * m), g(m));
    let right = -local(g1, g(1.0 - 0.5 * m), g(1.0 - m));
    evaluations += 4 + interior.evaluations;

    interior.value += left + right;
    interior.error_estimate += 4.0 * f64::EPSILON * (left.norm() + right.norm());
    interior.evaluations = evaluations;
    Ok(interior)
}

/// `int_0^1 f(u) du` with panels no wider than `1/(4n)`, for integrands
/// oscillating with frequency `n`.
pub fn integrate_oscillatory<F>(f: F, n: u64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    if n == 0 {
        return Err(HurzetaError::Domain(
            "oscillation frequency n must be at least 1".into(),
        ));
    }
    let count = 4 * n as usize;
    let width = 1.0 / count as f64;
    let panels: Vec<(f64, f64)> = (0..count)
        .map(|i| {
            let a = i as f64 * width;
            let b = if i + 1 == count {
                1.0
            } else {
                (i + 1) as f64 * width
            };
            (a, b)
        })
        .collect();
    adaptive(&f, &panels, spec)
}
