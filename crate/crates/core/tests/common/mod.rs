//! Oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use hurzeta::special_functions::BernoulliTable;

pub const CASE_SEED: u64 = 0x5eed_2024;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Relative error normalised by `1 + |reference|`.
pub fn rel(a: Complex64, reference: Complex64) -> f64 {
    (a - reference).norm() / (1.0 + reference.norm())
}

/// Coefficients `a_p 4^p` with `a_p = B_{2p} (2 - 2^{2p}) / (2p)!`, so that
/// `c csch c = sum_p a_p c^{2p}`.
pub fn csch_coefficients(pmax: usize) -> Vec<f64> {
    let table = BernoulliTable::new(2 * pmax);
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(pmax + 1);
    for p in 0..=pmax {
        if p > 0 {
            fact *= BigInt::from((2 * p - 1) * (2 * p));
        }
        let four_p = BigInt::one() << (2 * p);
        let weight = BigInt::from(2) - &four_p;
        let v = table.get(2 * p).unwrap() * BigRational::from_integer(weight * four_p)
            / BigRational::from_integer(fact.clone());
        out.push(v.to_f64().unwrap());
    }
    out
}

/// Truncated double series
/// `sum_{j=0}^{J} c^{2j+1} sum_{p=0}^{j} B_{2p}(2-2^{2p}) u^{2j-2p+1} / ((2p)!(2j-2p+1)!)`.
pub fn sinh_series(c: Complex64, u: f64, scaled: &[f64]) -> Complex64 {
    let jmax = scaled.len() - 1;
    // s[m] = (c u)^{2m+1} / (2m+1)!
    let cu = c * u;
    let mut s = Vec::with_capacity(jmax + 1);
    let mut t = cu;
    for m in 0..=jmax {
        s.push(t);
        t = t * cu * cu / (((2 * m + 2) * (2 * m + 3)) as f64);
    }
    let half = c / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    for (p, a) in scaled.iter().enumerate() {
        let ap = pw * *a;
        for sm in &s[..=(jmax - p)] {
            acc += ap * sm;
        }
        pw *= half * half;
    }
    acc
}

/// `B_2, B_4, ..., B_20`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `sum_{j>=0} (j + b)^{-k}` by a direct head of `n` terms and an
/// Euler-Maclaurin tail; terms with `j + b = 0` are not allowed.
pub fn hurwitz_em(k: u32, b: Complex64, n: usize) -> Complex64 {
    let s = k as f64;
    let mut head = Complex64::new(0.0, 0.0);
    for j in (0..n).rev() {
        head += (b + j as f64).powf(-s);
    }
    let a = b + n as f64;
    let mut tail = a.powf(1.0 - s) / (s - 1.0) + a.powf(-s) / 2.0;
    // rising factorial s (s+1) ... (s+2m-2) over (2m)!
    let mut poch = s;
    let mut fact = 2.0;
    for (m, b2m) in BERNOULLI_EVEN.iter().enumerate() {
        let m = m + 1;
        if m > 1 {
            poch *= (s + 2.0 * m as f64 - 3.0) * (s + 2.0 * m as f64 - 2.0);
            fact *= ((2 * m - 1) * (2 * m)) as f64;
        }
        tail += a.powf(-s - 2.0 * m as f64 + 1.0) * (b2m * poch / fact);
    }
    head + tail
}

/// Riemann `zeta(s)` for integer `s >= 2`.
pub fn zeta_em(s: u32) -> f64 {
    hurwitz_em(s, c(1.0, 0.0), 60).re
}

/// Catalan's constant.
pub const CATALAN_G: f64 = 0.915_965_594_177_219;
