//! Whole-sort examples: exhaustive averages, worst cases, decompositions.

use sortlab::analytics::{b_term, constant_of, info_lower_bound, total_formula};
use sortlab::combination::{choose_n_prime, combination_sort};
use sortlab::counting::{ceil_lg, is_sorted_permutation, random_permutation};
use sortlab::merge_insertion::{fj_batch_bounds, merge_insertion_traced};
use sortlab::oracles::{
    exact_sort_expectation, exhaustive_average, monte_carlo, monte_carlo_summary, pair_enumeration_expectation,
    permutation_census, worst_case,
};
use sortlab::sorters::{binary_insertion_sort, one_two_insertion};
use sortlab::two_merge::MergeVariant;
use sortlab::{Algorithm, CombinationPolicy, Rational, Scalar, Source, Tally};

fn r(num: i128, den: u128) -> Rational {
    Rational::from_ratio(num, den)
}

/// `sum_{i=2..n} (ceil(lg i) + B(i))`, exactly.
fn binary_sum(n: usize) -> Rational {
    (2..=n).fold(r(0, 1), |acc, i| acc + r(ceil_lg(i as u64) as i128, 1) + b_term::<Rational>(i).unwrap())
}

#[test]
fn binary_insertion_examples() {
    let mut t = Tally::new();
    assert_eq!(binary_insertion_sort(&[2, 1], &mut t).unwrap().as_slice(), &[1, 2]);
    assert_eq!(t.count(), 1);
    assert_eq!(exhaustive_average::<Rational>(Algorithm::Binary, 2).unwrap().value, r(1, 1));
    assert_eq!(exhaustive_average::<Rational>(Algorithm::Binary, 4).unwrap().value, r(14, 3));
    assert_eq!(exhaustive_average::<Rational>(Algorithm::Binary, 8).unwrap().value, binary_sum(8));
    assert_eq!(worst_case(Algorithm::Binary, 4).unwrap(), 5);
}

#[test]
fn one_two_examples() {
    let mut t = Tally::new();
    assert_eq!(one_two_insertion(&[2, 1], MergeVariant::Plain, &mut t).unwrap().as_slice(), &[1, 2]);
    assert_eq!(t.count(), 1);
    // p_4 = 1 is outside the window: two single insertions
    assert_eq!(exhaustive_average::<Rational>(Algorithm::OneTwo, 4).unwrap().value, r(14, 3));
}

#[test]
fn star_six_decomposes_into_rounds() {
    let exhaustive = exhaustive_average::<Rational>(Algorithm::OneTwoStar, 6).unwrap().value;
    let round6 = pair_enumeration_expectation(MergeVariant::Star, 6).unwrap().mean::<Rational>();
    let rounds = r(1, 1) + binary_sum(4) - binary_sum(2) + round6;
    assert_eq!(exhaustive, rounds);
    for (alg, n) in [(Algorithm::OneTwo, 4), (Algorithm::OneTwoStar, 6)] {
        let e = exact_sort_expectation::<Rational>(alg, n).unwrap();
        assert_eq!(e.source, Source::Exact);
        assert_eq!(e.value, exhaustive_average::<Rational>(alg, n).unwrap().value);
    }
}

#[test]
fn merge_insertion_small_worst_cases() {
    assert_eq!(worst_case(Algorithm::MergeInsertion, 3).unwrap(), 3);
    assert_eq!(worst_case(Algorithm::MergeInsertion, 5).unwrap(), 7);
    assert_eq!(worst_case(Algorithm::MergeInsertion, 10).unwrap(), 22);
    assert_eq!(info_lower_bound(10).unwrap(), 22);
    assert!(exhaustive_average::<Rational>(Algorithm::MergeInsertion, 5).unwrap().value <= r(7, 1));
}

#[test]
fn merge_insertion_batches_respect_their_budget() {
    for seed in 0..20 {
        let keys = random_permutation(700, seed);
        let mut t = Tally::new();
        let (out, trace) = merge_insertion_traced(&keys, &mut t).unwrap();
        assert!(is_sorted_permutation(&keys, out.as_slice()));
        for ins in trace {
            assert!(ins.comparisons <= ins.batch, "{ins:?}");
            assert!(ins.window < 1 << ins.batch, "{ins:?}");
        }
    }
    let b = fj_batch_bounds(21).unwrap().batch_bounds;
    assert_eq!(b, vec![1, 3, 5, 11, 21]);
}

#[test]
fn prefix_choice_invariants_up_to_2_pow_20() {
    let best = |k: u32| ((1u64 << k) + 2) / 3;
    for n in (4..=1usize << 20).step_by(2) {
        let c = choose_n_prime(n).unwrap();
        assert!(c.n_prime <= n && (n - c.n_prime) % 2 == 0, "n={n}");
        let k = (1..64).rev().find(|&k| best(k) <= n as u64).unwrap();
        let raw = best(k) as usize;
        assert!(c.n_prime == raw || c.n_prime + 1 == raw, "n={n}");
        assert_eq!(c.parity_adjusted, c.n_prime + 1 == raw);
    }
}

#[test]
fn combination_four_keys_exhaustive() {
    for policy in [CombinationPolicy::Combination, CombinationPolicy::Auto, CombinationPolicy::MergeInsertionOnly] {
        let census = permutation_census(Algorithm::Combination(policy), 4).unwrap();
        assert_eq!(census.runs, 24);
    }
    assert!(choose_n_prime(4).unwrap().n_prime >= 2);
}

#[test]
fn combination_constant_at_2048() {
    let mc = monte_carlo(Algorithm::Combination(CombinationPolicy::Auto), 2048, 10_000, 2048).unwrap();
    assert!(constant_of(mc.value, 2048) <= -1.40);
    let mut t = Tally::new();
    let keys = random_permutation(2048, 1);
    let out = combination_sort(&keys, CombinationPolicy::Auto, &mut t).unwrap();
    assert!(is_sorted_permutation(&keys, out.as_slice()));
}

#[test]
fn binary_monte_carlo_within_three_sigma() {
    let s = monte_carlo_summary(Algorithm::Binary, 1024, 10_000, 99).unwrap();
    let exact = total_formula::<f64>(Algorithm::Binary, 1024).unwrap().value;
    assert!((s.mean - exact).abs() <= 3.0 * s.std_error, "{} vs {exact} (se {})", s.mean, s.std_error);
    let again = monte_carlo_summary(Algorithm::Binary, 1024, 10_000, 99).unwrap();
    assert_eq!(s.mean, again.mean);
}

/// Seeded Monte Carlo runs land within four standard errors of the exact value
/// in at least 99% of repetitions.
#[test]
fn monte_carlo_is_consistent_with_exact() {
    let configs = [(Algorithm::Binary, 64usize), (Algorithm::OneTwoStar, 64), (Algorithm::OneTwo, 96)];
    let (mut inside, mut runs) = (0, 0);
    for (alg, n) in configs {
        let exact = exact_sort_expectation::<f64>(alg, n).unwrap().value;
        for seed in 0..100 {
            let s = monte_carlo_summary(alg, n, 400, seed).unwrap();
            runs += 1;
            if (s.mean - exact).abs() <= 4.0 * s.std_error {
                inside += 1;
            }
        }
    }
    assert!(inside * 100 >= runs * 99, "{inside}/{runs}");
}
