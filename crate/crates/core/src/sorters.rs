//! Insertion sorts built on RHBS and the two-element merges.

use crate::analytics::{STAR_WINDOW, TWO_MERGE_WINDOW};
use crate::counting::{PFraction, SortedSeq, Tally};
use crate::error::Result;
use crate::rhbs::rhbs_search;
use crate::two_merge::{pivot_schedule, two_merge_into, MergeVariant};

/// Which insertion rule a sorter applies in each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantPolicy {
    Binary,
    OneTwo,
    OneTwoStar,
}

impl VariantPolicy {
    pub fn name(self) -> &'static str {
        match self {
            VariantPolicy::Binary => "binary",
            VariantPolicy::OneTwo => "one_two",
            VariantPolicy::OneTwoStar => "one_two_star",
        }
    }

    /// Closed window of `p_i` in which a round uses the two-element merge.
    pub fn two_merge_window(self) -> Option<(f64, f64)> {
        match self {
            VariantPolicy::Binary => None,
            VariantPolicy::OneTwo => Some(TWO_MERGE_WINDOW),
            VariantPolicy::OneTwoStar => Some(STAR_WINDOW),
        }
    }

    pub fn merge_variant(self) -> Option<MergeVariant> {
        match self {
            VariantPolicy::Binary => None,
            VariantPolicy::OneTwo => Some(MergeVariant::Plain),
            VariantPolicy::OneTwoStar => Some(MergeVariant::Star),
        }
    }
}

impl From<MergeVariant> for VariantPolicy {
    fn from(v: MergeVariant) -> Self {
        match v {
            MergeVariant::Plain => VariantPolicy::OneTwo,
            MergeVariant::Star => VariantPolicy::OneTwoStar,
        }
    }
}

/// Whether round `i` inserts its pair with a two-element merge.
pub fn use_two_merge(i: usize, policy: VariantPolicy) -> bool {
    let Some((lo, hi)) = policy.two_merge_window() else {
        return false;
    };
    if i < 4 || i % 2 != 0 {
        return false;
    }
    let p = PFraction::<f64>::of_len(i).expect("i >= 4").value();
    (lo..=hi).contains(&p)
}

fn insert_one<K: Ord>(key: K, seq: &mut SortedSeq<K>, tally: &mut Tally) -> Result<()> {
    let gap = rhbs_search(&key, seq.as_slice(), tally)?;
    seq.insert_at(gap, key);
    Ok(())
}

/// One round: grows `seq` from `i - 2` to `i` elements.
pub(crate) fn insert_round<K: Ord>(
    a: K,
    b: K,
    seq: &mut SortedSeq<K>,
    policy: VariantPolicy,
    tally: &mut Tally,
) -> Result<()> {
    let i = seq.len() + 2;
    match policy.merge_variant() {
        Some(v) if use_two_merge(i, policy) => {
            let schedule = pivot_schedule(i, v)?;
            two_merge_into(a, b, seq, &schedule, tally)
        }
        _ => {
            insert_one(a, seq, tally)?;
            insert_one(b, seq, tally)
        }
    }
}

/// Paired rounds `i = start + 2, start + 4, ...` over `keys[start..]`, plus a
/// trailing single insertion when an odd key is left over.
pub(crate) fn extend_by_rounds<K: Ord + Clone>(
    seq: &mut SortedSeq<K>,
    keys: &[K],
    policy: VariantPolicy,
    tally: &mut Tally,
) -> Result<()> {
    let mut rest = keys.chunks_exact(2);
    for pair in rest.by_ref() {
        insert_round(pair[0].clone(), pair[1].clone(), seq, policy, tally)?;
    }
    if let [last] = rest.remainder() {
        insert_one(last.clone(), seq, tally)?;
    }
    Ok(())
}

/// BinaryInsertion: one RHBS insertion per key.
pub fn binary_insertion_sort<K: Ord + Clone>(keys: &[K], tally: &mut Tally) -> Result<SortedSeq<K>> {
    let mut seq = SortedSeq::empty();
    for k in keys {
        insert_one(k.clone(), &mut seq, tally)?;
    }
    Ok(seq)
}

fn sort_first_two<K: Ord + Clone>(keys: &[K], tally: &mut Tally) -> Result<SortedSeq<K>> {
    Ok(match keys {
        [] => SortedSeq::empty(),
        [a] => SortedSeq::from_vec_unchecked(vec![a.clone()]),
        [a, b, ..] => {
            let v = if tally.less(a, b)? { vec![a.clone(), b.clone()] } else { vec![b.clone(), a.clone()] };
            SortedSeq::from_vec_unchecked(v)
        }
    })
}

/// Runs a round-based sorter with the given policy.
pub fn paired_insertion_sort<K: Ord + Clone>(
    keys: &[K],
    policy: VariantPolicy,
    tally: &mut Tally,
) -> Result<SortedSeq<K>> {
    if policy == VariantPolicy::Binary {
        return binary_insertion_sort(keys, tally);
    }
    let mut seq = sort_first_two(keys, tally)?;
    if keys.len() > 2 {
        extend_by_rounds(&mut seq, &keys[2..], policy, tally)?;
    }
    Ok(seq)
}

/// (1,2)Insertion (`Plain`) or (1,2)Insertion* (`Star`).
///
/// The first two keys are ordered with one comparison; rounds
/// `i = 4, 6, ...` then add two keys each. An odd final key gets a single
/// RHBS insertion.
pub fn one_two_insertion<K: Ord + Clone>(
    keys: &[K],
    variant: MergeVariant,
    tally: &mut Tally,
) -> Result<SortedSeq<K>> {
    paired_insertion_sort(keys, variant.into(), tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn window_membership() {
        // p_6 = 0.75, p_8 = 1, p_1126 ~ 0.5498, p_2128 ~ 0.5195
        assert!(use_two_merge(6, VariantPolicy::OneTwo));
        assert!(!use_two_merge(8, VariantPolicy::OneTwo));
        assert!(!use_two_merge(6, VariantPolicy::Binary));
        assert!(use_two_merge(1126, VariantPolicy::OneTwoStar));
        assert!(!use_two_merge(1126, VariantPolicy::OneTwo));
        assert!(!use_two_merge(2128, VariantPolicy::OneTwoStar));
    }

    #[test]
    fn tiny_inputs() {
        for v in [MergeVariant::Plain, MergeVariant::Star] {
            let mut t = Tally::new();
            assert!(one_two_insertion::<u32>(&[], v, &mut t).unwrap().is_empty());
            assert_eq!(one_two_insertion(&[2, 1], v, &mut t).unwrap().as_slice(), &[1, 2]);
            assert_eq!(t.count(), 1);
        }
        let mut t = Tally::new();
        assert_eq!(binary_insertion_sort(&[2, 1], &mut t).unwrap().as_slice(), &[1, 2]);
        assert_eq!(t.count(), 1);
    }

    #[test]
    fn odd_lengths_sort() {
        let keys = [9, 3, 7, 1, 5, 8, 2];
        for policy in [VariantPolicy::Binary, VariantPolicy::OneTwo, VariantPolicy::OneTwoStar] {
            let mut t = Tally::new();
            let out = paired_insertion_sort(&keys, policy, &mut t).unwrap();
            assert_eq!(out.as_slice(), &[1, 2, 3, 5, 7, 8, 9]);
        }
    }

    #[test]
    fn duplicates_are_rejected() {
        let mut t = Tally::new();
        assert_eq!(binary_insertion_sort(&[1, 2, 1], &mut t), Err(Error::DuplicateKey));
        assert_eq!(
            one_two_insertion(&[4, 2, 3, 1, 2, 6], MergeVariant::Star, &mut t),
            Err(Error::DuplicateKey)
        );
    }
}
