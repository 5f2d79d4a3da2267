use std::fmt;

use serde::{Deserialize, Serialize};

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HurzetaError {
    /// A table or term budget was exceeded.
    #[error("capacity exceeded for {what}: requested {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    /// Argument lies on a pole or outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Valid mathematically, but not served by this evaluation path.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    /// Intermediate quantities would leave double-precision range.
    #[error("range error: {0}")]
    Range(String),
    /// The integrand returned a non-finite value at an interior node.
    #[error("non-finite integrand value at u = {node}")]
    Evaluation { node: f64 },
    /// A cot-weighted integrand does not vanish at an endpoint, so the integral diverges.
    #[error("integrand does not vanish at u = {endpoint} (|g| = {value:e}, scale {scale:e}); integral diverges")]
    Divergence {
        endpoint: f64,
        value: f64,
        scale: f64,
    },
    /// Too close to a singular locus of a closed-form representation.
    #[error("ill-conditioned: {locus} (distance {distance:e})")]
    IllConditioned { locus: String, distance: f64 },
    /// Bad user input (CLI parsing, invalid tolerances).
    #[error("usage error: {0}")]
    Usage(String),
    /// A report could not be encoded or written.
    #[error("output error: {0}")]
    Output(String),
}

impl HurzetaError {
    /// True for errors caused by the caller's parameters rather than by the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            HurzetaError::Usage(_)
                | HurzetaError::Domain(_)
                | HurzetaError::Unsupported(_)
                | HurzetaError::Output(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, HurzetaError>;

/// Non-fatal conditioning flags attached to results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Polylogarithm argument close to its pole at z = 1.
    NearPolylogPole { distance: f64 },
    /// Adaptive quadrature stopped before reaching tolerance.
    QuadratureNotConverged { error_estimate: f64, tolerance: f64 },
    /// Parameter lies outside the region covered by the test suite.
    OutsideTestedRegion { detail: String },
    /// Parameter in the band between the integer tolerance and the safety threshold.
    NearCaseBoundary { locus: String, distance: f64 },
    /// Point lies on the locus x = 2b where the integral term vanishes identically.
    VanishingIntegralLocus,
    /// Taylor coefficient estimates at two radii disagree.
    UnstableCoefficient { relative_change: f64 },
    /// Integer b routed through the series path.
    IntegerShiftRouted,
    /// The closed-form terms cancel so far that the result misses its accuracy target.
    Cancellation { error_bound: f64, magnitude: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NearPolylogPole { distance } => {
                write!(f, "polylog argument within {distance:e} of z = 1")
            }
            Warning::QuadratureNotConverged {
                error_estimate,
                tolerance,
            } => write!(
                f,
                "quadrature not converged (error {error_estimate:e} > tolerance {tolerance:e})"
            ),
            Warning::OutsideTestedRegion { detail } => write!(f, "outside tested region: {detail}"),
            Warning::NearCaseBoundary { locus, distance } => {
                write!(f, "near case boundary {locus} (distance {distance:e})")
            }
            Warning::VanishingIntegralLocus => write!(f, "x = 2b: integral term vanishes"),
            Warning::UnstableCoefficient { relative_change } => write!(
                f,
                "Taylor coefficient unstable across radii (relative change {relative_change:e})"
            ),
            Warning::IntegerShiftRouted => write!(f, "integer b routed to series/shift path"),
            Warning::Cancellation {
                error_bound,
                magnitude,
            } => write!(
                f,
                "terms cancel: error bound {error_bound:e} against |value| {magnitude:e}"
            ),
        }
    }
}

/// A value together with the conditioning warnings produced while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Flagged<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Flagged<T> {
    pub fn clean(value: T) -> Self {
        Flagged {
            value,
            warnings: Vec::new(),
        }
    }
}
