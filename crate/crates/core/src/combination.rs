//! MergeInsertion on a well-sized prefix, then paired 2Merge* rounds.
//!
//! MergeInsertion is at its best for `n = ceil(2^k / 3)`. The combination sorts
//! the largest such prefix that fits and finishes with the round rule of
//! (1,2)Insertion*.

use std::str::FromStr;

use crate::analytics::MERGE_INSERTION_WINDOW;
use crate::counting::{next_pow2, SortedSeq, Tally};
use crate::error::{Error, Result};
use crate::merge_insertion::merge_insertion_sort;
use crate::sorters::{extend_by_rounds, VariantPolicy};

/// Prefix length used by the combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixChoice {
    pub n: usize,
    pub n_prime: usize,
    /// The prefix was shortened by one so that `n - n_prime` is even.
    pub parity_adjusted: bool,
}

/// `ceil(2^k / 3)` for the largest `k` with that value `<= n`, shortened by
/// one if needed to make `n - n'` even.
pub fn choose_n_prime(n: usize) -> Result<PrefixChoice> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::domain(format!("combination needs even n >= 2, got {n}")));
    }
    let best = |k: u32| ((1u128 << k) + 2) / 3;
    let mut k = 1u32;
    while best(k + 1) <= n as u128 {
        k += 1;
    }
    let raw = best(k) as usize;
    let parity_adjusted = (n - raw) % 2 == 1;
    let n_prime = if parity_adjusted { raw - 1 } else { raw };
    Ok(PrefixChoice { n, n_prime, parity_adjusted })
}

/// How the combination treats `p_n` in `[0.638, 2/3]`, where plain
/// MergeInsertion is cheaper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CombinationPolicy {
    /// Always MergeInsertion prefix plus rounds.
    Combination,
    /// Always plain MergeInsertion.
    MergeInsertionOnly,
    /// Plain MergeInsertion inside the window, the combination elsewhere.
    #[default]
    Auto,
}

impl CombinationPolicy {
    pub fn name(self) -> &'static str {
        match self {
            CombinationPolicy::Combination => "combination",
            CombinationPolicy::MergeInsertionOnly => "merge-insertion-only",
            CombinationPolicy::Auto => "auto",
        }
    }

    /// Whether this policy sorts `n` keys with plain MergeInsertion.
    pub fn uses_merge_insertion_only(self, n: usize) -> bool {
        match self {
            CombinationPolicy::Combination => false,
            CombinationPolicy::MergeInsertionOnly => true,
            CombinationPolicy::Auto => in_merge_insertion_window(n),
        }
    }
}

impl FromStr for CombinationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "combination" => Ok(CombinationPolicy::Combination),
            "merge-insertion-only" | "merge_insertion_only" | "mi" => Ok(CombinationPolicy::MergeInsertionOnly),
            "auto" => Ok(CombinationPolicy::Auto),
            other => Err(Error::domain(format!("unknown combination policy '{other}'"))),
        }
    }
}

/// `p_n in [0.638, 2/3]`. The upper end is tested exactly as `3n <= 2 * 2^ceil(lg n)`.
pub fn in_merge_insertion_window(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let pow = next_pow2(n as u64) as u128;
    let upper = 3 * n as u128 <= 2 * pow;
    upper && n as f64 / pow as f64 >= MERGE_INSERTION_WINDOW.0
}

/// Sorts an even number of keys.
pub fn combination_sort<K: Ord + Clone>(
    keys: &[K],
    policy: CombinationPolicy,
    tally: &mut Tally,
) -> Result<SortedSeq<K>> {
    let n = keys.len();
    if n == 0 {
        return Ok(SortedSeq::empty());
    }
    let choice = choose_n_prime(n)?;
    if policy.uses_merge_insertion_only(n) {
        return merge_insertion_sort(keys, tally);
    }
    let mut seq = merge_insertion_sort(&keys[..choice.n_prime], tally)?;
    extend_by_rounds(&mut seq, &keys[choice.n_prime..], VariantPolicy::OneTwoStar, tally)?;
    Ok(seq)
}
