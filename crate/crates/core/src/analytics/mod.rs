//! Closed-form average comparison counts.
//!
//! Per-insertion costs are written as `ceil(lg i) + X(p_i)` where `p_i` is
//! [`PFraction`](crate::PFraction) of `i`. Formulas that carry an `O(.)`
//! remainder return an [`Expectation`] whose `error_band` records the size of
//! that remainder without its hidden constant.

mod constants;
mod quadrature;
mod steps;
mod totals;

pub use constants::*;
pub use quadrature::{adaptive_simpson, trapezoid_sum};
pub use steps::*;
pub use totals::*;

use crate::scalar::Scalar;

/// Where an expected value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Formula,
    Exact,
    MonteCarlo,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Formula => "formula",
            Source::Exact => "exact",
            Source::MonteCarlo => "monte_carlo",
        }
    }
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An expected comparison count with provenance.
///
/// `error_band` is present for Monte Carlo estimates (one standard error) and
/// for formulas with an asymptotic remainder (the remainder's order of
/// magnitude).
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation<S> {
    pub value: S,
    pub source: Source,
    pub error_band: Option<S>,
}

impl<S> Expectation<S> {
    pub fn formula(value: S) -> Self {
        Expectation { value, source: Source::Formula, error_band: None }
    }

    pub fn formula_with_band(value: S, band: S) -> Self {
        Expectation { value, source: Source::Formula, error_band: Some(band) }
    }

    pub fn exact(value: S) -> Self {
        Expectation { value, source: Source::Exact, error_band: None }
    }

    pub fn monte_carlo(value: S, std_error: S) -> Self {
        Expectation { value, source: Source::MonteCarlo, error_band: Some(std_error) }
    }
}

impl<S: Scalar> Expectation<S> {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64_lossy()
    }
}
