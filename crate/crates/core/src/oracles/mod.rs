//! Ground-truth engines that run the production sorters.
//!
//! - [`exhaustive_average`] / [`worst_case`]: every permutation of `1..=n`;
//! - [`pair_enumeration_expectation`]: every final rank pair of one round;
//! - [`exact_sort_expectation`]: sum of exact round expectations, each computed
//!   by walking the smaller key over all landing gaps;
//! - [`monte_carlo`]: seeded sampling for sizes beyond the exact caps.
//!
//! Every engine has a size cap; the `*_capped` forms take an explicit cap.

mod exact;
mod exhaustive;
mod monte_carlo;
mod pairs;

pub use exact::*;
pub use exhaustive::*;
pub use monte_carlo::*;
pub use pairs::*;

/// Largest `n` for exhaustive averages (`8! = 40320` runs).
pub const EXHAUSTIVE_CAP: usize = 8;
/// Largest `n` for exhaustive worst-case search.
pub const WORST_CASE_CAP: usize = 10;
/// Largest round length for pair enumeration.
pub const PAIR_CAP: usize = 4096;
/// Largest `n` for exact sort expectations.
pub const EXACT_CAP: usize = 1 << 14;
