use super::PAIR_CAP;
use crate::counting::Tally;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::two_merge::{pivot_schedule, two_merge_gaps, MergeVariant, PivotSchedule};

/// Comparison totals of one two-element merge over all `C(i, 2)` final rank
/// pairs, with the stop-block census of the pivot walk.
#[derive(Debug, Clone)]
pub struct RoundExpectation {
    pub i: usize,
    pub variant: MergeVariant,
    pub schedule: PivotSchedule,
    /// `C(i, 2)`.
    pub pairs: u64,
    /// Sum of all comparisons, Step 1 included.
    pub total: u64,
    pub step2_total: u64,
    pub step3_total: u64,
    pub step4_total: u64,
    /// Pairs whose smaller key stopped in block `b + 1`.
    pub stop_counts: Vec<u64>,
    /// Step-3 comparisons summed per stop block.
    pub step3_by_block: Vec<u64>,
}

impl RoundExpectation {
    pub fn mean<S: Scalar>(&self) -> S {
        S::from_ratio(self.total as i128, self.pairs as u128)
    }

    pub fn step4_mean<S: Scalar>(&self) -> S {
        S::from_ratio(self.step4_total as i128, self.pairs as u128)
    }

    /// `Pr[F_r]` for every schedule block, keyed by the loop round `r`.
    pub fn stop_distribution<S: Scalar>(&self) -> Vec<(u32, S)> {
        self.stop_counts
            .iter()
            .enumerate()
            .map(|(b, &c)| (self.schedule.stop_round(b + 1), S::from_ratio(c as i128, self.pairs as u128)))
            .collect()
    }

    /// Mean Step-3 comparisons given the walk stopped in `block` (1-based).
    pub fn step3_given_block(&self, block: usize) -> Option<f64> {
        let c = *self.stop_counts.get(block - 1)?;
        (c > 0).then(|| self.step3_by_block[block - 1] as f64 / c as f64)
    }

    /// `E[g(r)]` over the stop distribution, where `g` receives the loop round
    /// and the block's gap count.
    pub fn stop_moment<F: Fn(u32, usize) -> f64>(&self, g: F) -> f64 {
        let weighted: Vec<f64> = self
            .stop_counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(b, &c)| {
                let r = self.schedule.stop_round(b + 1);
                let w = self.schedule.block_gaps(b + 1).len();
                c as f64 * g(r, w)
            })
            .collect();
        f64::sum_all(weighted) / self.pairs as f64
    }
}

/// Enumerates every final rank pair of a round of length `i`.
///
/// `T` is `4, 8, ..., 4(i - 2)`; the smaller key of a pair landing in gaps
/// `g_a <= g_b` is `4 g_a + 1` and the larger `4 g_b + 2`, so every gap pair,
/// including two keys in the same gap, is realized. Pairs with odd `g_a + g_b`
/// are passed in descending order to exercise Step 1's swap.
pub fn pair_enumeration_expectation(variant: MergeVariant, i: usize) -> Result<RoundExpectation> {
    pair_enumeration_capped(variant, i, PAIR_CAP)
}

pub fn pair_enumeration_capped(variant: MergeVariant, i: usize, cap: usize) -> Result<RoundExpectation> {
    if i > cap {
        return Err(Error::CapExceeded { engine: "pair_enumeration", requested: i, cap });
    }
    let schedule = pivot_schedule(i, variant)?;
    let t: Vec<u32> = (1..=(i - 2) as u32).map(|j| 4 * j).collect();
    let blocks = schedule.block_count();
    let mut out = RoundExpectation {
        i,
        variant,
        schedule: schedule.clone(),
        pairs: (i * (i - 1) / 2) as u64,
        total: 0,
        step2_total: 0,
        step3_total: 0,
        step4_total: 0,
        stop_counts: vec![0; blocks],
        step3_by_block: vec![0; blocks],
    };
    let mut tally = Tally::new();
    for ga in 0..=i - 2 {
        for gb in ga..=i - 2 {
            let (small, large) = (4 * ga as u32 + 1, 4 * gb as u32 + 2);
            let before = tally.count();
            let trace = if (ga + gb) % 2 == 0 {
                two_merge_gaps(&small, &large, &t, &schedule, &mut tally)?
            } else {
                two_merge_gaps(&large, &small, &t, &schedule, &mut tally)?
            };
            if trace.small_gap != ga || trace.large_gap != gb {
                return Err(Error::domain(format!(
                    "merge placed ({ga}, {gb}) at ({}, {})",
                    trace.small_gap, trace.large_gap
                )));
            }
            let spent = tally.count() - before;
            debug_assert_eq!(spent, trace.comparisons() as u64);
            out.total += spent;
            out.step2_total += trace.step2 as u64;
            out.step3_total += trace.step3 as u64;
            out.step4_total += trace.step4 as u64;
            out.stop_counts[trace.block - 1] += 1;
            out.step3_by_block[trace.block - 1] += trace.step3 as u64;
        }
    }
    Ok(out)
}

/// `Pr[F]` for a stop block from its boundaries alone: `w z / (2 C(i, 2))`
/// where `w` is the block's gap count and `z` the sum of the first and last
/// gap weights `i - 1 - g`. Returned as `(numerator, denominator)`.
pub fn block_probability(schedule: &PivotSchedule, block: usize) -> (u64, u64) {
    let i = schedule.target_len() as u64;
    let gaps = schedule.block_gaps(block);
    let w = gaps.len() as u64;
    let pairs = i * (i - 1) / 2;
    if w == 0 {
        return (0, pairs);
    }
    let z = (i - 1 - gaps.start as u64) + (i - 1 - (gaps.end as u64 - 1));
    (w * z, 2 * pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn i4_plain_fixture() {
        let r = pair_enumeration_expectation(MergeVariant::Plain, 4).unwrap();
        // T = (4, 8), schedule (2): pair costs 4, 5, 5, 4, 4, 2
        assert_eq!(r.pairs, 6);
        assert_eq!(r.total, 24);
        assert_eq!(r.mean::<Rational>(), Rational::from_int(4));
        assert_eq!(r.stop_counts, vec![5, 1]);
    }

    #[test]
    fn stop_probabilities_match_block_formula() {
        for i in [4usize, 6, 8, 30, 64, 100] {
            for v in [MergeVariant::Plain, MergeVariant::Star] {
                let r = pair_enumeration_expectation(v, i).unwrap();
                let mut sum = Rational::from_int(0);
                for (b, &c) in r.stop_counts.iter().enumerate() {
                    let (num, den) = block_probability(&r.schedule, b + 1);
                    let formula = Rational::from_ratio(num as i128, den as u128);
                    let observed = Rational::from_ratio(c as i128, r.pairs as u128);
                    assert_eq!(formula, observed, "i={i} {v:?} block {}", b + 1);
                    sum += observed;
                }
                assert_eq!(sum, Rational::from_int(1));
            }
        }
    }

    #[test]
    fn cap_refuses() {
        assert!(pair_enumeration_capped(MergeVariant::Plain, 10, 8).is_err());
    }
}
