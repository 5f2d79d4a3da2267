use std::sync::OnceLock;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::ddouble::{Dd, DdComplex};
use crate::error::{Flagged, HurzetaError, Result, Warning};

pub const DEFAULT_POLYLOG_MAX_ORDER: u32 = 64;

/// Distance from `z = 1` below which a result carries a conditioning warning.
pub const POLE_GUARD: f64 = 1e-12;

/// `Li_{-m}(z) = N_m(z) / (1 - z)^{m+1}` with an exact integer numerator.
///
/// `N_0(z) = z` and `N_{m+1}(z) = z ((1 - z) N_m'(z) + (m + 1) N_m(z))`, which is
/// `z d/dz` applied to the rational form. For `m >= 1` the coefficients of
/// `N_m(z) / z` are the Eulerian numbers `A(m, 0..m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylogRational {
    order: u32,
    /// `coeffs[p]` multiplies `z^p`; `coeffs[0]` is always zero.
    coeffs: Vec<BigUint>,
    mirror: Vec<f64>,
    mirror_dd: Vec<Dd>,
}

impl PolylogRational {
    pub fn order_zero() -> Self {
        Self::from_coeffs(0, vec![BigUint::zero(), BigUint::from(1u32)])
    }

    fn from_coeffs(order: u32, coeffs: Vec<BigUint>) -> Self {
        let mirror = coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        let mirror_dd = coeffs.iter().map(Dd::from_biguint).collect();
        PolylogRational {
            order,
            coeffs,
            mirror,
            mirror_dd,
        }
    }

    /// Numerator of `Li_{-(m+1)}` from that of `Li_{-m}`.
    pub fn next(&self) -> Self {
        let m = self.order as usize;
        let a = &self.coeffs;
        let at = |p: usize| a.get(p).cloned().unwrap_or_default();
        let deg = a.len() - 1;
        let mut out = vec![BigUint::zero()];
        for q in 0..=deg {
            // (q+1) a[q+1] + (m+1-q) a[q]; the second factor is nonnegative wherever a[q] != 0
            let mut d = at(q + 1) * BigUint::from(q + 1);
            if m + 1 >= q {
                d += at(q) * BigUint::from(m + 1 - q);
            }
            out.push(d);
        }
        while out.len() > 2 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Self::from_coeffs(self.order + 1, out)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Numerator coefficients, index = power of `z`.
    pub fn numerator(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Evaluates the closed form; for `|z| > 1` the inversion
    /// `Li_{-m}(z) = (-1)^{m+1} Li_{-m}(1/z)` (`m >= 1`) keeps powers bounded.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            return self.eval_direct(z);
        }
        let w = z.inv();
        if self.order == 0 {
            -Complex64::new(1.0, 0.0) - self.eval_direct(w)
        } else if self.order % 2 == 1 {
            self.eval_direct(w)
        } else {
            -self.eval_direct(w)
        }
    }

    fn eval_direct(&self, z: Complex64) -> Complex64 {
        let num = self
            .mirror
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c);
        num / (Complex64::new(1.0, 0.0) - z).powu(self.order + 1)
    }

    /// [`eval`](Self::eval) carried out in double-double.
    pub fn eval_dd(&self, z: DdComplex) -> DdComplex {
        if z.to_c64().norm() <= 1.0 {
            return self.eval_direct_dd(z);
        }
        let w = z.recip();
        if self.order == 0 {
            -DdComplex::ONE - self.eval_direct_dd(w)
        } else if self.order % 2 == 1 {
            self.eval_direct_dd(w)
        } else {
            -self.eval_direct_dd(w)
        }
    }

    fn eval_direct_dd(&self, z: DdComplex) -> DdComplex {
        let num = self
            .mirror_dd
            .iter()
            .rev()
            .fold(DdComplex::ZERO, |acc, &c| acc * z + DdComplex::new(c, Dd::ZERO));
        num * (DdComplex::ONE - z).recip().powu(self.order + 1)
    }
}

/// Rows `Li_0 ..= Li_{-max}` built once.
#[derive(Debug, Clone)]
pub struct PolylogTable {
    rows: Vec<PolylogRational>,
}

impl PolylogTable {
    pub fn new(max_order: u32) -> Self {
        let mut rows = vec![PolylogRational::order_zero()];
        for _ in 0..max_order {
            let next = rows.last().expect("non-empty").next();
            rows.push(next);
        }
        PolylogTable { rows }
    }

    pub fn shared() -> &'static PolylogTable {
        static TABLE: OnceLock<PolylogTable> = OnceLock::new();
        TABLE.get_or_init(|| PolylogTable::new(DEFAULT_POLYLOG_MAX_ORDER))
    }

    pub fn max_order(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    pub fn row(&self, m: u32) -> Result<&PolylogRational> {
        self.rows.get(m as usize).ok_or(HurzetaError::Capacity {
            what: "polylog order table",
            requested: m as u64,
            limit: self.max_order() as u64,
        })
    }
}

/// `Li_{-m}(z)` for `m >= 0`.
pub fn polylog_nonpos(m: u32, z: Complex64) -> Result<Flagged<Complex64>> {
    let row = PolylogTable::shared().row(m)?;
    let dist = (Complex64::new(1.0, 0.0) - z).norm();
    if dist == 0.0 {
        return Err(HurzetaError::Domain(format!(
            "Li_-{m}(z) has a pole at z = 1"
        )));
    }
    let value = row.eval(z);
    let mut out = Flagged::clean(value);
    if dist < POLE_GUARD {
        out.warnings.push(Warning::NearPolylogPole { distance: dist });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_at_one_half() {
        let h = c(0.5, 0.0);
        assert!((polylog_nonpos(0, h).unwrap().value - 1.0).norm() < 1e-15);
        assert!((polylog_nonpos(1, h).unwrap().value - 2.0).norm() < 1e-15);
        assert!((polylog_nonpos(2, h).unwrap().value - 6.0).norm() < 1e-14);
        let brute: f64 = (1..200).map(|j| (j as f64).powi(2) * 0.5f64.powi(j)).sum();
        assert!((brute - 6.0).abs() < 1e-12);
    }

    #[test]
    fn pole_is_domain_error() {
        assert!(matches!(
            polylog_nonpos(3, c(1.0, 0.0)),
            Err(HurzetaError::Domain(_))
        ));
        let near = polylog_nonpos(0, c(1.0 - 1e-13, 0.0)).unwrap();
        assert!(matches!(near.warnings[0], Warning::NearPolylogPole { .. }));
    }

    #[test]
    fn numerators_are_eulerian_rows() {
        // A(n, k) = (k+1) A(n-1, k) + (n-k) A(n-1, k-1)
        let table = PolylogTable::new(20);
        let mut row: Vec<u128> = vec![1];
        for n in 1..=20u32 {
            if n > 1 {
                let prev = row.clone();
                row = (0..n as usize)
                    .map(|k| {
                        let a = prev.get(k).copied().unwrap_or(0) * (k as u128 + 1);
                        let b = if k > 0 {
                            prev[k - 1] * (n as u128 - k as u128)
                        } else {
                            0
                        };
                        a + b
                    })
                    .collect();
            }
            let num = table.row(n).unwrap().numerator();
            assert_eq!(num.len(), n as usize + 1, "order {n}");
            assert!(num[0].is_zero());
            for (k, e) in row.iter().enumerate() {
                assert_eq!(num[k + 1], BigUint::from(*e), "A({n},{k})");
            }
        }
    }

    #[test]
    fn inversion_branch_matches_direct_form() {
        let table = PolylogTable::shared();
        for m in 1..12 {
            let row = table.row(m).unwrap();
            let z = c(1.3, -0.7);
            let direct = row.eval_direct(z);
            let inv = row.eval(z);
            assert!((direct - inv).norm() <= 1e-12 * direct.norm(), "m={m}");
        }
        let z = c(-2.5, 0.4);
        let row0 = table.row(0).unwrap();
        assert!((row0.eval(z) - z / (1.0 - z)).norm() < 1e-15);
    }

    #[test]
    fn beyond_table_is_capacity_error() {
        assert!(matches!(
            polylog_nonpos(DEFAULT_POLYLOG_MAX_ORDER + 1, c(0.5, 0.0)),
            Err(HurzetaError::Capacity { .. })
        ));
    }
}
