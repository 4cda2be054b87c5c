//! Ford-Johnson merge insertion.
//!
//! Keys are paired, the larger key of each pair is sorted recursively, and the
//! smaller keys are inserted back in batches. Batch `k` holds the pending keys
//! `b_j` with `t_{k-1} < j <= t_k`, inserted in decreasing `j`; each search
//! window then has at most `2^k - 1` elements, so no insertion in batch `k`
//! needs more than `k` comparisons.
//!
//! The search inside a window is RHBS, which costs at most
//! `ceil(lg(len + 1))` comparisons like any binary search.

use crate::counting::{SortedSeq, Tally};
use crate::error::{Error, Result};
use crate::rhbs::{default_pivot_rule, rhbs_locate};

/// The batch boundaries `t_1, t_2, ...` covering `n` pending keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FjPlan {
    pub n: usize,
    pub batch_bounds: Vec<usize>,
}

/// `t_k` for `k = 1, 2, ...` up to the first `t_k >= n`.
/// `t_1 = 1, t_2 = 3`, `t_k = t_{k-1} + 2 t_{k-2}`.
pub fn fj_batch_bounds(n: usize) -> Result<FjPlan> {
    if n == 0 {
        return Err(Error::domain("fj_batch_bounds needs n >= 1"));
    }
    let mut bounds = vec![1usize];
    // seeding t_0 = 1 makes the recurrence give t_2 = 3
    let (mut prev, mut cur) = (1usize, 1usize);
    while cur < n {
        (prev, cur) = (cur, cur + 2 * prev);
        bounds.push(cur);
    }
    Ok(FjPlan { n, batch_bounds: bounds })
}

/// Cost of one pending insertion, for structural checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PendingInsert {
    /// Batch index `k` (`>= 2`; `b_1` is placed for free).
    pub batch: u32,
    /// Size of the searched window.
    pub window: usize,
    pub comparisons: u32,
}

/// Sorts `keys`, counting comparisons in `tally`.
pub fn merge_insertion_sort<K: Ord + Clone>(keys: &[K], tally: &mut Tally) -> Result<SortedSeq<K>> {
    let order = fj_order(keys, tally, None)?;
    Ok(SortedSeq::from_vec_unchecked(order.into_iter().map(|j| keys[j as usize].clone()).collect()))
}

/// [`merge_insertion_sort`] that also records every pending insertion at every
/// recursion level.
pub fn merge_insertion_traced<K: Ord + Clone>(
    keys: &[K],
    tally: &mut Tally,
) -> Result<(SortedSeq<K>, Vec<PendingInsert>)> {
    let mut trace = Vec::new();
    let order = fj_order(keys, tally, Some(&mut trace))?;
    let seq = SortedSeq::from_vec_unchecked(order.into_iter().map(|j| keys[j as usize].clone()).collect());
    Ok((seq, trace))
}

fn fj_order<K: Ord>(keys: &[K], tally: &mut Tally, trace: Option<&mut Vec<PendingInsert>>) -> Result<Vec<u32>> {
    if keys.len() > u32::MAX as usize {
        return Err(Error::domain("too many keys"));
    }
    let items: Vec<u32> = (0..keys.len() as u32).collect();
    let mut scratch = Scratch { partner: vec![0; keys.len()], rank: vec![0; keys.len()] };
    let mut trace = trace;
    fj_rec(keys, items, &mut scratch, tally, &mut trace)
}

/// Per-key-index scratch, rewritten by each level after its recursive call.
struct Scratch {
    partner: Vec<u32>,
    /// `j` for the winner `a_j`, 1-based.
    rank: Vec<u32>,
}

/// Sorts the key indices in `items`.
fn fj_rec<K: Ord>(
    keys: &[K],
    items: Vec<u32>,
    scratch: &mut Scratch,
    tally: &mut Tally,
    trace: &mut Option<&mut Vec<PendingInsert>>,
) -> Result<Vec<u32>> {
    let n = items.len();
    if n <= 1 {
        return Ok(items);
    }
    let mut winners = Vec::with_capacity(n / 2);
    let mut losers = Vec::with_capacity(n / 2);
    for pair in items.chunks_exact(2) {
        let (x, y) = (pair[0], pair[1]);
        let (lo, hi) = if tally.less(&keys[x as usize], &keys[y as usize])? { (x, y) } else { (y, x) };
        winners.push(hi);
        losers.push(lo);
    }
    let leftover = (n % 2 == 1).then(|| items[n - 1]);

    let sorted = fj_rec(keys, winners.clone(), scratch, tally, trace)?;
    // deeper levels reuse the scratch, so pairings are written back afterwards
    for (&w, &l) in winners.iter().zip(&losers) {
        scratch.partner[w as usize] = l;
    }
    let m = sorted.len();
    for (j, &a) in sorted.iter().enumerate() {
        scratch.rank[a as usize] = j as u32 + 1;
    }
    // pending[j - 1] = b_j; b_j < a_j = sorted[j - 1] for j <= m
    let mut pending: Vec<u32> = sorted.iter().map(|&a| scratch.partner[a as usize]).collect();
    pending.extend(leftover);
    let total = pending.len();

    let mut chain = Vec::with_capacity(n);
    chain.push(pending[0]);
    chain.extend_from_slice(&sorted);

    let plan = fj_batch_bounds(total)?;
    // positions of a_j in the chain, refreshed per batch
    let mut a_pos: Vec<usize> = Vec::new();
    for (k_idx, w) in plan.batch_bounds.windows(2).enumerate() {
        let batch = k_idx as u32 + 2;
        let (lo, hi) = (w[0], w[1].min(total));
        if lo >= hi {
            break;
        }
        a_pos.clear();
        a_pos.resize(hi - lo, usize::MAX);
        // a_j for j in lo+1..=min(hi, m), located by index identity
        let upper_a = hi.min(m);
        if upper_a > lo {
            let mut found = 0;
            for (pos, &x) in chain.iter().enumerate() {
                let j = scratch.rank[x as usize] as usize;
                if sorted.get(j.wrapping_sub(1)) == Some(&x) && j > lo && j <= upper_a {
                    a_pos[j - lo - 1] = pos;
                    found += 1;
                    if found == upper_a - lo {
                        break;
                    }
                }
            }
        }
        for j in (lo + 1..=hi).rev() {
            let b = pending[j - 1];
            let window = if j <= m { a_pos[j - lo - 1] } else { chain.len() };
            let before = tally.count();
            let key = &keys[b as usize];
            let gap = rhbs_locate(window, default_pivot_rule(), |t| tally.less(key, &keys[chain[t] as usize]))?;
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(PendingInsert { batch, window, comparisons: (tally.count() - before) as u32 });
            }
            chain.insert(gap, b);
            for p in a_pos[..j - lo - 1].iter_mut() {
                if *p != usize::MAX && *p >= gap {
                    *p += 1;
                }
            }
        }
    }
    Ok(chain)
}
