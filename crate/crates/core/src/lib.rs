//! Comparison-counting sorting laboratory.
//!
//! Every algorithm here routes its key comparisons through a [`Tally`], so the
//! cost of a run is exactly the number of comparisons it made. On top of the
//! sorters sit two independent views of the same numbers:
//!
//! - [`analytics`]: closed-form average costs (per-insertion formulas, the
//!   piecewise `D`/`D*` step costs, the linear-term constants of whole sorts);
//! - [`oracles`]: exact expectations computed by running the production code
//!   over every permutation, every rank pair, or every landing gap.
//!
//! Formula code is generic over [`Real`] (`f32`/`f64`); exact engines are
//! generic over [`Scalar`], which additionally covers [`Rational`].

pub mod algorithm;
pub mod analytics;
pub mod combination;
pub mod counting;
pub mod error;
pub mod merge_insertion;
pub mod oracles;
pub mod rhbs;
pub mod scalar;
pub mod sorters;
pub mod two_merge;

pub use algorithm::Algorithm;
pub use analytics::{Expectation, Source};
pub use combination::CombinationPolicy;
pub use counting::{Key, PFraction, SortedSeq, Tally};
pub use error::{Error, Result};
pub use scalar::{Real, Scalar};
pub use two_merge::MergeVariant;

/// Exact rational number used by the enumeration engines.
pub type Rational = num_rational::BigRational;

/// Expectation carried in double precision.
pub type Expectation64 = Expectation<f64>;
/// Expectation carried in single precision.
pub type Expectation32 = Expectation<f32>;
/// Expectation carried as an exact rational.
pub type ExactExpectation = Expectation<Rational>;
/// Double precision p-fraction.
pub type PFraction64 = PFraction<f64>;
