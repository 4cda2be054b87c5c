//! Frozen breakpoints and constants, evaluated once to 30 digits.

#![allow(clippy::excessive_precision)]

/// `(1 + sqrt 2) / 4`: first split of the 2Merge step-3 cost.
pub const SPLIT_LOW: f64 = 0.603553390593273762200422181052;
/// `(2 + sqrt 2) / 4`: second split of the 2Merge step-3 cost.
pub const SPLIT_HIGH: f64 = 0.853553390593273762200422181052;

/// Closed window of `p_i` where (1,2)Insertion uses 2Merge.
pub const TWO_MERGE_WINDOW: (f64, f64) = (0.5511, 0.888);

/// `3/4 - sqrt 6 / 12`.
pub const STAR_WINDOW_LOW: f64 = 0.545875854768068491816892993774;
/// `3/4 + sqrt 3 / 12`.
pub const STAR_WINDOW_HIGH: f64 = 0.894337567297406441127287195126;
/// Closed window of `p_i` where (1,2)Insertion* uses 2Merge*.
pub const STAR_WINDOW: (f64, f64) = (STAR_WINDOW_LOW, STAR_WINDOW_HIGH);

/// Branch point of the 2Merge* pivot schedule and step cost.
pub const STAR_SPLIT: f64 = 0.75;

/// `p_n` range where the combination falls back to plain MergeInsertion.
pub const MERGE_INSERTION_WINDOW: (f64, f64) = (0.638, 2.0 / 3.0);

/// Threshold on `p_n` selecting the larger MergeInsertion prefix.
pub const PREFIX_SPLIT: f64 = 2.0 / 3.0;

/// `3 - lg 3`: MergeInsertion's linear coefficient at `n = ceil(2^k / 3)`.
pub const MERGE_INSERTION_BEST: f64 = 1.41503749927884381854626105605;

/// `lg e`: linear coefficient of `lg n!`.
pub const LG_E: f64 = 1.442695040888963407359924681;
