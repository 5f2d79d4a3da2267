use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{HurzetaError, Result};

pub const DEFAULT_BERNOULLI_MAX: usize = 64;

/// Exact Bernoulli numbers `B_0..=B_max` (convention `B_1 = -1/2`) with `f64` mirrors.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
    mirrors: Vec<f64>,
}

impl BernoulliTable {
    /// Builds the table from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
    ///
    /// The recurrence runs on integers `B_j * L`, where `L` is the product of
    /// all primes up to `max + 1` (a multiple of every denominator).
    pub fn new(max: usize) -> Self {
        let scale = primorial(max + 1);
        let mut scaled: Vec<BigInt> = Vec::with_capacity(max + 1);
        scaled.push(scale.clone());
        for m in 1..=max {
            if m > 1 && m % 2 == 1 {
                scaled.push(BigInt::zero());
                continue;
            }
            // binom walks C(m+1, j) for j = 0..m
            let mut binom = BigInt::one();
            let mut acc = BigInt::zero();
            for (j, sj) in scaled.iter().enumerate() {
                if !sj.is_zero() {
                    acc += sj * &binom;
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            scaled.push(-acc / BigInt::from(m + 1));
        }
        let values: Vec<BigRational> = scaled
            .into_iter()
            .map(|s| BigRational::new(s, scale.clone()))
            .collect();
        let mirrors = values
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect();
        BernoulliTable { values, mirrors }
    }

    /// Process-wide table up to [`DEFAULT_BERNOULLI_MAX`], built on first use.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_BERNOULLI_MAX))
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&BigRational> {
        self.values.get(n).ok_or(HurzetaError::Capacity {
            what: "Bernoulli table",
            requested: n as u64,
            limit: self.max_index() as u64,
        })
    }

    /// Saturates to `±inf` beyond `B_258`.
    pub fn get_f64(&self, n: usize) -> Result<f64> {
        self.get(n).map(|_| self.mirrors[n])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

fn primorial(n: usize) -> BigInt {
    let mut sieve = vec![true; n + 1];
    let mut out = BigInt::one();
    for p in 2..=n {
        if sieve[p] {
            out *= BigInt::from(p);
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// Exact `B_n` from the shared table.
pub fn bernoulli(n: usize) -> Result<BigRational> {
    BernoulliTable::shared().get(n).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli(20).unwrap(), rat(-174611, 330));
    }

    #[test]
    fn odd_entries_vanish() {
        let t = BernoulliTable::shared();
        for n in (3..=t.max_index()).step_by(2) {
            assert!(t.get(n).unwrap().is_zero());
        }
    }

    #[test]
    fn recurrence_residual_is_exactly_zero() {
        let t = BernoulliTable::shared();
        for m in 1..=t.max_index() {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for j in 0..=m {
                acc += t.get(j).unwrap() * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            assert!(acc.is_zero(), "residual at m = {m}");
        }
    }

    #[test]
    fn beyond_table_is_capacity_error() {
        assert!(matches!(
            bernoulli(DEFAULT_BERNOULLI_MAX + 1),
            Err(HurzetaError::Capacity { .. })
        ));
    }

    #[test]
    fn mirrors_track_exact_values() {
        let t = BernoulliTable::shared();
        assert_eq!(t.get_f64(2).unwrap(), 1.0 / 6.0);
        let b64 = t.get_f64(64).unwrap();
        assert!(((b64 + 2.093_800_591_134_638e38) / b64).abs() < 1e-14);
    }
}
