use super::{exhaustive_average, monte_carlo, EXACT_CAP, EXHAUSTIVE_CAP};
use crate::algorithm::Algorithm;
use crate::analytics::{Expectation, Source};
use crate::combination::choose_n_prime;
use crate::counting::Tally;
use crate::error::{Error, Result};
use crate::rhbs::rhbs_total_over_gaps;
use crate::scalar::Scalar;
use crate::sorters::{use_two_merge, VariantPolicy};
use crate::two_merge::{locate_smaller, pivot_schedule};

/// Trials used when a MergeInsertion run is too large to enumerate.
pub const PREFIX_TRIALS: u64 = 500;
/// Seed of those trials.
pub const PREFIX_SEED: u64 = 0x5eed_f00d;

/// Expected cost of one round as `numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundTotal {
    pub numerator: u128,
    pub denominator: u128,
}

impl RoundTotal {
    pub fn value<S: Scalar>(&self) -> S {
        S::from_ratio(self.numerator as i128, self.denominator)
    }
}

/// Exact expected comparisons of round `i` (growing `i - 2` keys to `i`).
///
/// Merge rounds walk the smaller key over each landing gap `l` with the real
/// Steps 2-3 code, weight it by the `i - 1 - l` positions left for the larger
/// key, and add the larger key's RHBS cost summed over those positions in
/// closed form. The result is the pair-enumeration total over `C(i, 2)`.
pub fn exact_round_total(i: usize, policy: VariantPolicy) -> Result<RoundTotal> {
    if i < 4 || i % 2 != 0 {
        return Err(Error::domain(format!("round length must be even and >= 4, got {i}")));
    }
    let Some(variant) = policy.merge_variant().filter(|_| use_two_merge(i, policy)) else {
        let (a, b) = (rhbs_total_over_gaps(i - 1) as u128, rhbs_total_over_gaps(i) as u128);
        return Ok(RoundTotal { numerator: a * i as u128 + b * (i as u128 - 1), denominator: (i * (i - 1)) as u128 });
    };
    let schedule = pivot_schedule(i, variant)?;
    let t: Vec<u32> = (1..=(i - 2) as u32).map(|j| 2 * j).collect();
    let mut total = 0u128;
    let mut tally = Tally::new();
    for ga in 0..=i - 2 {
        let a = 2 * ga as u32 + 1;
        let before = tally.count();
        let place = locate_smaller(&a, &t, &schedule, &mut tally)?;
        if place.gap != ga {
            return Err(Error::domain(format!("key for gap {ga} landed in {}", place.gap)));
        }
        let located = 1 + (tally.count() - before) as u128;
        let m = i - 1 - ga;
        total += located * m as u128 + rhbs_total_over_gaps(m) as u128;
    }
    Ok(RoundTotal { numerator: total, denominator: (i * (i - 1) / 2) as u128 })
}

pub fn exact_round_expectation<S: Scalar>(i: usize, policy: VariantPolicy) -> Result<S> {
    Ok(exact_round_total(i, policy)?.value())
}

/// MergeInsertion average: exhaustive up to the enumeration cap, else a seeded
/// Monte Carlo estimate ([`PREFIX_TRIALS`] trials of [`PREFIX_SEED`]).
pub fn merge_insertion_expectation<S: Scalar>(n: usize) -> Result<Expectation<S>> {
    if n <= EXHAUSTIVE_CAP {
        return exhaustive_average(Algorithm::MergeInsertion, n);
    }
    let mc = monte_carlo(Algorithm::MergeInsertion, n, PREFIX_TRIALS, PREFIX_SEED)?;
    Ok(Expectation::monte_carlo(from_f64(mc.value), from_f64(mc.error_band.unwrap_or(0.0))))
}

fn from_f64<S: Scalar>(x: f64) -> S {
    const SCALE: f64 = (1u64 << 40) as f64;
    S::from_ratio((x * SCALE).round() as i128, 1u128 << 40)
}

fn policy_of(alg: Algorithm) -> VariantPolicy {
    alg.variant_policy().unwrap_or(VariantPolicy::OneTwoStar)
}

/// Exact average comparisons of `alg` on `n` keys, as a sum of round
/// expectations. MergeInsertion (alone or as the combination's prefix) is
/// exact up to the enumeration cap and sampled beyond it; the result is then
/// tagged `monte_carlo`.
pub fn exact_sort_expectation<S: Scalar>(alg: Algorithm, n: usize) -> Result<Expectation<S>> {
    exact_sort_expectation_capped(alg, n, EXACT_CAP)
}

pub fn exact_sort_expectation_capped<S: Scalar>(alg: Algorithm, n: usize, cap: usize) -> Result<Expectation<S>> {
    if n > cap {
        return Err(Error::CapExceeded { engine: "exact_sort_expectation", requested: n, cap });
    }
    if n == 0 {
        return Err(Error::domain("exact_sort_expectation needs n >= 1"));
    }
    let rounds = |from: usize, to: usize| -> Result<S> {
        let mut terms = Vec::new();
        for i in (from..=to).step_by(2) {
            terms.push(exact_round_expectation::<S>(i, policy_of(alg))?);
        }
        Ok(S::sum_all(terms))
    };
    match alg {
        Algorithm::Binary => {
            let terms = (2..=n).map(|i| S::from_ratio(rhbs_total_over_gaps(i), i as u128));
            Ok(Expectation::exact(S::sum_all(terms)))
        }
        Algorithm::OneTwo | Algorithm::OneTwoStar => {
            if n == 1 {
                return Ok(Expectation::exact(S::zero()));
            }
            let even = n - n % 2;
            let mut value = S::one() + rounds(4, even)?;
            if n % 2 == 1 {
                value = value + S::from_ratio(rhbs_total_over_gaps(n), n as u128);
            }
            Ok(Expectation::exact(value))
        }
        Algorithm::MergeInsertion => merge_insertion_expectation(n),
        Algorithm::Combination(policy) => {
            if !alg.accepts(n) {
                return Err(Error::domain(format!("combination needs even n, got {n}")));
            }
            if policy.uses_merge_insertion_only(n) {
                return merge_insertion_expectation(n);
            }
            let np = choose_n_prime(n)?.n_prime;
            let prefix = merge_insertion_expectation::<S>(np)?;
            let value = prefix.value + rounds(np + 2, n)?;
            Ok(Expectation { value, source: prefix.source, error_band: prefix.error_band })
        }
    }
}

/// Exact round expectations for every even `i <= n_max`, accumulated, so sort
/// expectations for many `n` cost one pass.
#[derive(Debug, Clone)]
pub struct ExactCurve {
    policy: VariantPolicy,
    /// `cum[k]` = sum of round expectations for `i = 4, ..., 2k`.
    cum: Vec<f64>,
}

impl ExactCurve {
    pub fn build(policy: VariantPolicy, n_max: usize) -> Result<Self> {
        if n_max > EXACT_CAP {
            return Err(Error::CapExceeded { engine: "exact_curve", requested: n_max, cap: EXACT_CAP });
        }
        let mut cum = vec![0.0; n_max / 2 + 1];
        let (mut sum, mut carry) = (0f64, 0f64);
        for k in 2..=n_max / 2 {
            let y = exact_round_expectation::<f64>(2 * k, policy)? - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            cum[k] = sum;
        }
        Ok(ExactCurve { policy, cum })
    }

    pub fn policy(&self) -> VariantPolicy {
        self.policy
    }

    pub fn n_max(&self) -> usize {
        2 * (self.cum.len() - 1)
    }

    /// Sum of round expectations for `i = from + 2, ..., to` (both even).
    pub fn rounds_between(&self, from: usize, to: usize) -> f64 {
        self.cum[to / 2] - self.cum[from.max(2) / 2]
    }

    /// Sort expectation for even `n`, matching [`exact_sort_expectation`].
    pub fn sort_expectation(&self, alg: Algorithm, n: usize) -> Result<Expectation<f64>> {
        if n < 2 || n % 2 != 0 || n > self.n_max() {
            return Err(Error::domain(format!("n = {n} outside the curve (even, 2..={})", self.n_max())));
        }
        match alg {
            Algorithm::OneTwo | Algorithm::OneTwoStar if alg.variant_policy() == Some(self.policy) => {
                Ok(Expectation::exact(1.0 + self.cum[n / 2]))
            }
            Algorithm::Combination(policy) if self.policy == VariantPolicy::OneTwoStar => {
                if policy.uses_merge_insertion_only(n) {
                    return merge_insertion_expectation(n);
                }
                let np = choose_n_prime(n)?.n_prime;
                let prefix = merge_insertion_expectation::<f64>(np)?;
                let value = prefix.value + self.rounds_between(np, n);
                Ok(Expectation { value, source: prefix.source, error_band: prefix.error_band })
            }
            _ => Err(Error::domain(format!("{alg} is not built from {} rounds", self.policy.name()))),
        }
    }
}

impl Source {
    /// Whether values with this source carry sampling noise.
    pub fn is_sampled(self) -> bool {
        self == Source::MonteCarlo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::pair_enumeration_expectation;
    use crate::two_merge::MergeVariant;
    use crate::Rational;

    #[test]
    fn rounds_match_pair_enumeration_exactly() {
        for i in (4..=160).step_by(2) {
            for v in [MergeVariant::Plain, MergeVariant::Star] {
                let policy = VariantPolicy::from(v);
                if !use_two_merge(i, policy) {
                    continue;
                }
                let pairs = pair_enumeration_expectation(v, i).unwrap();
                let exact = exact_round_total(i, policy).unwrap();
                assert_eq!(exact.denominator, pairs.pairs as u128);
                assert_eq!(exact.numerator, pairs.total as u128, "i={i} {v:?}");
            }
        }
    }

    #[test]
    fn binary_rounds_are_two_insertions() {
        let r: Rational = exact_round_expectation(4, VariantPolicy::OneTwo).unwrap();
        // p_4 = 1 is outside the window: 5/3 + 2
        assert_eq!(r, Rational::from_ratio(11, 3));
    }

    #[test]
    fn curve_matches_direct() {
        let curve = ExactCurve::build(VariantPolicy::OneTwoStar, 400).unwrap();
        for n in [4usize, 6, 50, 222, 400] {
            let direct = exact_sort_expectation::<f64>(Algorithm::OneTwoStar, n).unwrap().value;
            let fast = curve.sort_expectation(Algorithm::OneTwoStar, n).unwrap().value;
            assert!((direct - fast).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn cap_refuses() {
        assert!(exact_sort_expectation_capped::<f64>(Algorithm::OneTwo, 100, 50).is_err());
    }
}
