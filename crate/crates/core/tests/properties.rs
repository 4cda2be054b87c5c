use proptest::prelude::*;
use sortlab::counting::{is_sorted_permutation, random_permutation};
use sortlab::rhbs::{rhbs_gap_cost, rhbs_search};
use sortlab::two_merge::{pivot_schedule, two_merge_gaps, MergeVariant};
use sortlab::{Algorithm, CombinationPolicy, Tally};

const ALGS: [Algorithm; 7] = [
    Algorithm::Binary,
    Algorithm::OneTwo,
    Algorithm::OneTwoStar,
    Algorithm::MergeInsertion,
    Algorithm::Combination(CombinationPolicy::Auto),
    Algorithm::Combination(CombinationPolicy::Combination),
    Algorithm::Combination(CombinationPolicy::MergeInsertionOnly),
];

proptest! {
    #[test]
    fn every_sorter_sorts(n in 2usize..600, seed: u64, which in 0usize..ALGS.len()) {
        let alg = ALGS[which];
        let n = if alg.accepts(n) { n } else { n + 1 };
        let keys = random_permutation(n, seed);
        let mut tally = Tally::new();
        let out = alg.sort(&keys, &mut tally).unwrap();
        prop_assert!(is_sorted_permutation(&keys, out.as_slice()));
        // same input, same count
        prop_assert_eq!(alg.count(&keys).unwrap(), tally.count());
    }

    #[test]
    fn rhbs_cost_matches_gap_model(m in 1usize..3000, pick: u64) {
        let t: Vec<u64> = (1..m as u64).map(|j| 2 * j).collect();
        let gap = (pick % m as u64) as usize;
        let mut tally = Tally::new();
        prop_assert_eq!(rhbs_search(&(2 * gap as u64 + 1), &t, &mut tally).unwrap(), gap);
        prop_assert_eq!(tally.count(), rhbs_gap_cost(m, gap).unwrap() as u64);
    }

    #[test]
    fn two_merge_is_symmetric_in_its_arguments(half in 2usize..400, ga: u64, gb: u64, star: bool) {
        let i = 2 * half;
        let variant = if star { MergeVariant::Star } else { MergeVariant::Plain };
        let schedule = pivot_schedule(i, variant).unwrap();
        let t: Vec<u64> = (1..i as u64 - 1).map(|j| 4 * j).collect();
        let (ga, gb) = ((ga % (i as u64 - 1)), (gb % (i as u64 - 1)));
        let (ga, gb) = (ga.min(gb), ga.max(gb));
        let (a, b) = (4 * ga + 1, 4 * gb + 2);
        let (mut t1, mut t2) = (Tally::new(), Tally::new());
        let fwd = two_merge_gaps(&a, &b, &t, &schedule, &mut t1).unwrap();
        let rev = two_merge_gaps(&b, &a, &t, &schedule, &mut t2).unwrap();
        prop_assert_eq!((fwd.small_gap as u64, fwd.large_gap as u64), (ga, gb));
        prop_assert_eq!((rev.small_gap, rev.large_gap), (fwd.small_gap, fwd.large_gap));
        prop_assert_eq!(t1.count(), t2.count());
    }
}
