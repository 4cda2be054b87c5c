//! One enum naming every sorter, for engines and the CLI.

use std::fmt;
use std::str::FromStr;

use crate::combination::{combination_sort, CombinationPolicy};
use crate::counting::{SortedSeq, Tally};
use crate::error::{Error, Result};
use crate::merge_insertion::merge_insertion_sort;
use crate::sorters::{paired_insertion_sort, VariantPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Binary,
    OneTwo,
    OneTwoStar,
    MergeInsertion,
    Combination(CombinationPolicy),
}

impl Algorithm {
    /// The five sorters with default settings.
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Binary,
        Algorithm::OneTwo,
        Algorithm::OneTwoStar,
        Algorithm::MergeInsertion,
        Algorithm::Combination(CombinationPolicy::Auto),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Binary => "binary",
            Algorithm::OneTwo => "one_two",
            Algorithm::OneTwoStar => "one_two_star",
            Algorithm::MergeInsertion => "merge_insertion",
            Algorithm::Combination(CombinationPolicy::Auto) => "combination",
            Algorithm::Combination(CombinationPolicy::Combination) => "combination_forced",
            Algorithm::Combination(CombinationPolicy::MergeInsertionOnly) => "combination_mi_only",
        }
    }

    /// Whether the sorter accepts `n` keys (the combination needs even `n`).
    pub fn accepts(self, n: usize) -> bool {
        !matches!(self, Algorithm::Combination(_)) || n % 2 == 0
    }

    pub fn sort<K: Ord + Clone>(self, keys: &[K], tally: &mut Tally) -> Result<SortedSeq<K>> {
        match self {
            Algorithm::Binary => paired_insertion_sort(keys, VariantPolicy::Binary, tally),
            Algorithm::OneTwo => paired_insertion_sort(keys, VariantPolicy::OneTwo, tally),
            Algorithm::OneTwoStar => paired_insertion_sort(keys, VariantPolicy::OneTwoStar, tally),
            Algorithm::MergeInsertion => merge_insertion_sort(keys, tally),
            Algorithm::Combination(policy) => combination_sort(keys, policy, tally),
        }
    }

    /// Sorts and returns only the comparison count.
    pub fn count<K: Ord + Clone>(self, keys: &[K]) -> Result<u64> {
        let mut tally = Tally::new();
        self.sort(keys, &mut tally)?;
        Ok(tally.count())
    }

    /// The round policy for the insertion sorters.
    pub fn variant_policy(self) -> Option<VariantPolicy> {
        match self {
            Algorithm::Binary => Some(VariantPolicy::Binary),
            Algorithm::OneTwo => Some(VariantPolicy::OneTwo),
            Algorithm::OneTwoStar => Some(VariantPolicy::OneTwoStar),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "binary" => Algorithm::Binary,
            "one_two" => Algorithm::OneTwo,
            "one_two_star" => Algorithm::OneTwoStar,
            "merge_insertion" => Algorithm::MergeInsertion,
            "combination" => Algorithm::Combination(CombinationPolicy::Auto),
            "combination_forced" => Algorithm::Combination(CombinationPolicy::Combination),
            "combination_mi_only" => Algorithm::Combination(CombinationPolicy::MergeInsertionOnly),
            other => return Err(Error::domain(format!("unknown algorithm '{other}'"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for alg in Algorithm::ALL
            .into_iter()
            .chain([CombinationPolicy::Combination, CombinationPolicy::MergeInsertionOnly].map(Algorithm::Combination))
        {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("quick".parse::<Algorithm>().is_err());
    }
}
