//! Exact-form building blocks: Bernoulli numbers, polylogarithms of non-positive
//! integer order, generalized harmonic numbers and a few constants.

mod bernoulli;
mod constants;
pub mod ddouble;
mod polylog;

pub use bernoulli::{bernoulli, BernoulliTable, DEFAULT_BERNOULLI_MAX};
pub use constants::{Constants, CATALAN, EULER_GAMMA, PI};
pub use polylog::{
    polylog_nonpos, PolylogRational, PolylogTable, DEFAULT_POLYLOG_MAX_ORDER, POLE_GUARD,
};

/// Generalized harmonic number `H_k(n) = sum_{j=1}^{n} j^{-k}`, with `H_k(0) = 0`.
///
/// Summed from the smallest term upwards.
pub fn harmonic_number(k: u32, n: u64) -> f64 {
    (1..=n).rev().map(|j| (j as f64).powi(-(k as i32))).sum()
}
