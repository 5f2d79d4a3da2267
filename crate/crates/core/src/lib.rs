//! Hurwitz zeta `zeta(k, b)` at integer `k >= 2` and complex `b`, evaluated
//! from polylogarithms of non-positive order and a cot-weighted integral, and
//! the analytic continuation of its generating function
//! `f(x, b) = sum_{k>=2} x^k (zeta(k, b) - b^{-k})`.
//!
//! Every closed form is paired with an independent direct-summation route so
//! results can be cross-checked (see [`hurwitz::hurwitz_series_oracle`]).

pub mod cli_io;
pub mod error;
pub mod exec;
pub mod genfun;
pub mod hurwitz;
pub mod quadrature;
pub mod special_functions;
pub mod suites;
pub mod validation;

pub use error::{Flagged, HurzetaError, Result, Warning};
pub use num_complex::Complex64;
pub use quadrature::{QuadratureResult, QuadratureSpec};
