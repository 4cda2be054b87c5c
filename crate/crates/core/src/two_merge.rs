//! Two-element merge: inserting a pair `(A, B)` into a sorted `T` of length
//! `i - 2` (`i` even, `i >= 4`).
//!
//! 1. one comparison orders the pair so that `A < B`;
//! 2. `A` walks a geometric pivot schedule until it falls below a pivot;
//! 3. `A` is RHBS-inserted into the block between the previous pivot and the
//!    stopping pivot;
//! 4. `B` is RHBS-inserted into the part of `T` above `A`.
//!
//! The plain schedule uses `alpha(r) = 1 - 2^(-r/2)`. The star schedule bends
//! odd rounds so the first block is a power of two whenever `p_i > 3/4`.
//! Pivot indices are computed with integer arithmetic, so the power-of-two
//! property is exact rather than subject to float rounding.

use crate::counting::{next_pow2, SortedSeq, Tally};
use crate::error::{Error, Result};
use crate::rhbs::rhbs_search;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergeVariant {
    Plain,
    Star,
}

impl MergeVariant {
    pub fn name(self) -> &'static str {
        match self {
            MergeVariant::Plain => "plain",
            MergeVariant::Star => "star",
        }
    }
}

/// `1 - 2^(-r/2)`.
pub fn alpha<T: Real>(r: u32) -> T {
    let half_r = T::from_u32(r).unwrap() / T::lit(2.0);
    T::one() - T::lit(2.0).powf(-half_r)
}

/// The star schedule fraction for round `r` and `p = p_i`.
pub fn alpha_star<T: Real>(r: u32, p: T) -> Result<T> {
    let half = T::lit(0.5);
    if !(p > half && p <= T::one()) {
        return Err(Error::domain(format!("p = {p:?} outside (1/2, 1]")));
    }
    if r == 0 {
        return Err(Error::domain("alpha_star needs r >= 1"));
    }
    let two = T::lit(2.0);
    let one = T::one();
    if r % 2 == 0 {
        let k = (r / 2) as i32;
        return Ok(one - one / two.powi(k));
    }
    let k = r.div_ceil(2) as i32;
    Ok(if p > T::lit(0.75) {
        one - one / two.powi(k - 1) + one / (p * two.powi(k + 1))
    } else {
        one - one / two.powi(k) - one / (p * two.powi(k + 2))
    })
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `ceil(alpha(r) * i)` (or the star analogue), computed exactly.
pub fn raw_pivot(i: usize, r: u32, variant: MergeVariant) -> usize {
    debug_assert!(r >= 1);
    let iu = i as u128;
    let k = r.div_ceil(2);
    if r % 2 == 0 {
        // i - i / 2^k, ceil = i - floor(i / 2^k)
        return (iu - (iu >> k)) as usize;
    }
    match variant {
        MergeVariant::Plain => {
            // i - i sqrt2 / 2^k, ceil = i - floor(floor(sqrt(2 i^2)) / 2^k)
            let root = isqrt(2 * iu * iu);
            (iu - (root >> k)) as usize
        }
        MergeVariant::Star => {
            let pow = next_pow2(i as u64) as i128;
            let ii = i as i128;
            if 4 * ii > 3 * pow {
                // i - i / 2^(k-1) + P / 2^(k+1) = i + (P - 4i) / 2^(k+1)
                let num = pow - 4 * ii;
                let den = 1i128 << (k + 1);
                (ii + num.div_euclid(den) + i128::from(num.rem_euclid(den) != 0)) as usize
            } else {
                // i - i / 2^k - P / 2^(k+2) = i - (4i + P) / 2^(k+2)
                let num = 4 * ii + pow;
                (ii - (num >> (k + 2))) as usize
            }
        }
    }
}

/// Increasing pivot positions (1-based into `T`) for one two-element merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotSchedule {
    variant: MergeVariant,
    target_len: usize,
    pivots: Vec<usize>,
    rounds: Vec<u32>,
}

impl PivotSchedule {
    pub fn variant(&self) -> MergeVariant {
        self.variant
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Loop round `r` that produced each kept pivot.
    pub fn rounds(&self) -> &[u32] {
        &self.rounds
    }

    /// Loop round at which a key stopping in `block` (1-based) stopped. The
    /// residual block reports the final loop round.
    pub fn stop_round(&self, block: usize) -> u32 {
        match self.rounds.get(block - 1) {
            Some(&r) => r,
            None => crate::analytics::max_pivot_rounds(self.target_len),
        }
    }

    /// Block count, including the residual block above the last pivot.
    pub fn block_count(&self) -> usize {
        self.pivots.len() + 1
    }

    /// Block `r` (1-based) as the half-open range of gaps it covers.
    pub fn block_gaps(&self, r: usize) -> std::ops::Range<usize> {
        let lo = if r == 1 { 0 } else { self.pivots[r - 2] };
        let hi = if r <= self.pivots.len() {
            self.pivots[r - 1]
        } else {
            self.target_len - 1
        };
        lo..hi
    }
}

/// Pivot schedule for target length `i`: raw pivot `ceil(alpha * i)` for
/// `r = 1..=ceil(2 lg i)`, clamped to `i - 2`, dropping any index not above its
/// predecessor.
pub fn pivot_schedule(i: usize, variant: MergeVariant) -> Result<PivotSchedule> {
    if i < 4 || i % 2 != 0 {
        return Err(Error::domain(format!("two-element merge needs even i >= 4, got {i}")));
    }
    let top = i - 2;
    let rounds = crate::analytics::max_pivot_rounds(i);
    let mut pivots = Vec::with_capacity(rounds as usize);
    let mut kept = Vec::with_capacity(rounds as usize);
    for r in 1..=rounds {
        let idx = raw_pivot(i, r, variant).min(top);
        if idx >= 1 && pivots.last().is_none_or(|&prev| idx > prev) {
            pivots.push(idx);
            kept.push(r);
        }
    }
    Ok(PivotSchedule { variant, target_len: i, pivots, rounds: kept })
}

/// Where the smaller key landed and what it cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    /// Landing gap in `T`.
    pub gap: usize,
    /// 1-based block index; `pivots.len() + 1` is the residual top block.
    pub block: usize,
    /// Comparisons made while walking the pivots.
    pub step2: u32,
    /// Comparisons made by the RHBS inside the block.
    pub step3: u32,
}

/// Steps 2 and 3: locate `a` in `t` by walking `schedule`.
pub fn locate_smaller<K: Ord>(
    a: &K,
    t: &[K],
    schedule: &PivotSchedule,
    tally: &mut Tally,
) -> Result<Placement> {
    if t.len() + 2 != schedule.target_len {
        return Err(Error::domain(format!(
            "schedule built for i = {}, sequence has {} elements",
            schedule.target_len,
            t.len()
        )));
    }
    let start = tally.count();
    let mut prev = 0usize;
    let mut stop = None;
    for (idx, &pivot) in schedule.pivots.iter().enumerate() {
        if tally.less(a, &t[pivot - 1])? {
            stop = Some((idx + 1, pivot));
            break;
        }
        prev = pivot;
    }
    let (block, hi) = stop.unwrap_or((schedule.pivots.len() + 1, t.len() + 1));
    let step2 = (tally.count() - start) as u32;
    let local = rhbs_search(a, &t[prev..hi - 1], tally)?;
    let step3 = (tally.count() - start) as u32 - step2;
    Ok(Placement { gap: prev + local, block, step2, step3 })
}

/// Full trace of one two-element merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeTrace {
    pub small_gap: usize,
    pub large_gap: usize,
    pub block: usize,
    pub step2: u32,
    pub step3: u32,
    pub step4: u32,
    /// Whether step 1 found the pair in descending order.
    pub swapped: bool,
}

impl MergeTrace {
    pub fn comparisons(&self) -> u32 {
        1 + self.step2 + self.step3 + self.step4
    }
}

/// Runs all four steps on `t` without materializing the merged sequence.
pub fn two_merge_gaps<K: Ord>(
    a: &K,
    b: &K,
    t: &[K],
    schedule: &PivotSchedule,
    tally: &mut Tally,
) -> Result<MergeTrace> {
    let swapped = !tally.less(a, b)?;
    let (small, large) = if swapped { (b, a) } else { (a, b) };
    let place = locate_smaller(small, t, schedule, tally)?;
    let before = tally.count();
    let local = rhbs_search(large, &t[place.gap..], tally)?;
    let step4 = (tally.count() - before) as u32;
    Ok(MergeTrace {
        small_gap: place.gap,
        large_gap: place.gap + local,
        block: place.block,
        step2: place.step2,
        step3: place.step3,
        step4,
        swapped,
    })
}

/// Inserts `a` and `b` into `seq` in place using a prepared schedule.
pub(crate) fn two_merge_into<K: Ord>(
    a: K,
    b: K,
    seq: &mut SortedSeq<K>,
    schedule: &PivotSchedule,
    tally: &mut Tally,
) -> Result<()> {
    let trace = two_merge_gaps(&a, &b, seq.as_slice(), schedule, tally)?;
    let (small, large) = if trace.swapped { (b, a) } else { (a, b) };
    // insert the larger key first so the smaller gap index stays valid
    seq.insert_at(trace.large_gap, large);
    seq.insert_at(trace.small_gap, small);
    Ok(())
}

/// Merges `{a, b}` into `t`, where `|t| + 2` is even and at least 4.
pub fn two_merge<K: Ord>(
    a: K,
    b: K,
    t: SortedSeq<K>,
    variant: MergeVariant,
    tally: &mut Tally,
) -> Result<SortedSeq<K>> {
    let schedule = pivot_schedule(t.len() + 2, variant)?;
    let mut seq = t;
    two_merge_into(a, b, &mut seq, &schedule, tally)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::PFraction;

    #[test]
    fn alpha_examples() {
        assert!((alpha::<f64>(1) - 0.292893).abs() < 1e-6);
        assert_eq!(alpha::<f64>(2), 0.5);
        assert_eq!(alpha::<f64>(4), 0.75);
    }

    #[test]
    fn alpha_star_examples() {
        assert!((alpha_star(1, 1.0f64).unwrap() - 0.25).abs() < 1e-15);
        assert!((alpha_star(1, 0.75f64).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(alpha_star(2, 0.9f64).unwrap(), 0.5);
        for r in (2..20).step_by(2) {
            assert_eq!(alpha_star(r, 0.6f64).unwrap(), alpha::<f64>(r));
        }
        assert!(alpha_star(1, 0.5f64).is_err());
        assert!(alpha_star(1, 1.2f64).is_err());
    }

    #[test]
    fn raw_pivots_agree_with_float_ceil() {
        for i in (4..=3000).step_by(2) {
            let p = PFraction::<f64>::of_len(i).unwrap().value();
            for r in 1..=crate::analytics::max_pivot_rounds(i) {
                let plain = (alpha::<f64>(r) * i as f64).ceil() as usize;
                assert_eq!(raw_pivot(i, r, MergeVariant::Plain), plain, "plain i={i} r={r}");
                let star = alpha_star(r, p).unwrap() * i as f64;
                let exact = raw_pivot(i, r, MergeVariant::Star);
                // float product may sit a hair off an exact integer
                assert!((star.ceil() as usize).abs_diff(exact) <= 1, "star i={i} r={r}");
                assert!(exact as f64 >= star - 1e-9 && (exact as f64) < star + 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(pivot_schedule(8, MergeVariant::Plain).unwrap().pivots(), &[3, 4, 6]);
        assert_eq!(pivot_schedule(4, MergeVariant::Plain).unwrap().pivots(), &[2]);
        assert_eq!(pivot_schedule(16, MergeVariant::Star).unwrap().pivots()[0], 4);
        assert!(pivot_schedule(7, MergeVariant::Plain).is_err());
        assert!(pivot_schedule(2, MergeVariant::Plain).is_err());
    }

    #[test]
    fn star_first_block_is_power_of_two_above_three_quarters() {
        for i in (4..=4096).step_by(2) {
            let p = PFraction::<f64>::of_len(i).unwrap().value();
            if p <= 0.75 {
                continue;
            }
            let s = pivot_schedule(i, MergeVariant::Star).unwrap();
            let gaps = s.block_gaps(1).len();
            assert!(gaps.is_power_of_two(), "i={i} gaps={gaps}");
            assert_eq!(gaps, next_pow2(i as u64) as usize / 4);
        }
    }

    #[test]
    fn schedules_are_strictly_increasing_and_in_range() {
        for i in (4..=2048).step_by(2) {
            for v in [MergeVariant::Plain, MergeVariant::Star] {
                let s = pivot_schedule(i, v).unwrap();
                assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
                assert!(s.pivots().iter().all(|&x| (1..=i - 2).contains(&x)));
                let covered: usize = (1..=s.block_count()).map(|r| s.block_gaps(r).len()).sum();
                assert_eq!(covered, i - 1);
            }
        }
    }

    #[test]
    fn hand_traced_merge() {
        for (a, b) in [(5, 15), (15, 5)] {
            let mut t = Tally::new();
            let out = two_merge(a, b, SortedSeq::new(vec![10, 20]).unwrap(), MergeVariant::Plain, &mut t)
                .unwrap();
            assert_eq!(out.as_slice(), &[5, 10, 15, 20]);
            assert_eq!(t.count(), 5);
        }
    }

    #[test]
    fn same_gap_pair_and_top_gap() {
        let t = SortedSeq::new(vec![10, 20, 30, 40, 50, 60]).unwrap();
        let mut tally = Tally::new();
        let out = two_merge(33, 36, t.clone(), MergeVariant::Plain, &mut tally).unwrap();
        assert_eq!(out.as_slice(), &[10, 20, 30, 33, 36, 40, 50, 60]);
        let out = two_merge(70, 65, t, MergeVariant::Star, &mut tally).unwrap();
        assert_eq!(out.as_slice(), &[10, 20, 30, 40, 50, 60, 65, 70]);
    }

    #[test]
    fn duplicates_and_bad_lengths_fail() {
        let mut t = Tally::new();
        let seq = SortedSeq::new(vec![10, 20]).unwrap();
        assert_eq!(
            two_merge(20, 5, seq.clone(), MergeVariant::Plain, &mut t),
            Err(Error::DuplicateKey)
        );
        assert_eq!(two_merge(7, 7, seq, MergeVariant::Plain, &mut t), Err(Error::DuplicateKey));
        let odd = SortedSeq::new(vec![10, 20, 30]).unwrap();
        assert!(two_merge(1, 2, odd, MergeVariant::Plain, &mut t).is_err());
    }
}
