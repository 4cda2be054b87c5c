//! Right-heavy binary search (RHBS).
//!
//! At every step the probe `t_d` is chosen so that the part below or the part
//! above it has `2^j - 1` elements. The consequence is that the expensive
//! landing gaps always form a suffix: if a key costs `q0 + 1` comparisons,
//! every larger key does too.
//!
//! Gaps are 0-based: gap `g` of a sequence `t_1..t_m` means "exactly `g`
//! elements are smaller than the key".

use crate::analytics::Expectation;
use crate::counting::{ceil_lg, SortedSeq, Tally};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Chooses the 1-based probe position for a window of `len` elements.
pub type PivotRule = fn(usize) -> usize;

/// Probe position `d` (1-based) for a sorted window of `len >= 1` elements.
pub fn rhbs_pivot(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::domain("rhbs_pivot needs a non-empty window"));
    }
    Ok(pivot_rule(len))
}

#[inline]
fn pivot_rule(len: usize) -> usize {
    let e = ceil_lg(len as u64 + 1);
    if e < 2 {
        return 1;
    }
    let quarter = 1usize << (e - 2);
    if len < 3 * quarter {
        quarter
    } else {
        len - 2 * quarter + 1
    }
}

/// Runs the search over an abstract window `0..len`. `probe(j)` must report
/// whether the key is smaller than element `j` and count the comparison.
/// Returns the landing gap.
#[inline]
pub fn rhbs_locate<F>(len: usize, pivot: PivotRule, mut probe: F) -> Result<usize>
where
    F: FnMut(usize) -> Result<bool>,
{
    let mut lo = 0usize;
    let mut len = len;
    while len > 0 {
        let d = pivot(len);
        if d == 0 || d > len {
            return Err(Error::domain(format!("pivot {d} outside window of {len}")));
        }
        if probe(lo + d - 1)? {
            len = d - 1;
        } else {
            lo += d;
            len -= d;
        }
    }
    Ok(lo)
}

/// Landing gap of `key` in `seq`.
#[inline]
pub fn rhbs_search<K: Ord>(key: &K, seq: &[K], tally: &mut Tally) -> Result<usize> {
    rhbs_locate(seq.len(), pivot_rule, |j| tally.less(key, &seq[j]))
}

/// [`rhbs_search`] with a substitute pivot rule. Exists so verification suites
/// can be checked against deliberately broken rules.
pub fn rhbs_search_with<K: Ord>(
    key: &K,
    seq: &[K],
    tally: &mut Tally,
    pivot: PivotRule,
) -> Result<usize> {
    rhbs_locate(seq.len(), pivot, |j| tally.less(key, &seq[j]))
}

/// The default pivot rule as a function pointer.
pub fn default_pivot_rule() -> PivotRule {
    pivot_rule
}

/// Inserts `key` into `seq`. An empty sequence costs nothing.
pub fn rhbs_insert<K: Ord>(key: K, mut seq: SortedSeq<K>, tally: &mut Tally) -> Result<SortedSeq<K>> {
    let gap = rhbs_search(&key, seq.as_slice(), tally)?;
    seq.insert_at(gap, key);
    Ok(seq)
}

/// Comparisons RHBS spends on a key landing in gap `gap` of a window with
/// `m_gaps` gaps: the leftmost `2^ceil(lg m_gaps) - m_gaps` gaps are one
/// comparison cheaper.
pub fn rhbs_gap_cost(m_gaps: usize, gap: usize) -> Result<u32> {
    if m_gaps == 0 {
        return Err(Error::domain("rhbs_gap_cost needs m_gaps >= 1"));
    }
    if gap >= m_gaps {
        return Err(Error::domain(format!("gap {gap} outside 0..{m_gaps}")));
    }
    let q = ceil_lg(m_gaps as u64);
    let cheap = (1usize << q) - m_gaps;
    Ok(if gap < cheap { q - 1 } else { q })
}

/// `m_gaps * (ceil(lg m) + 1 - 2^ceil(lg m) / m)`: the total cost over all
/// gaps, an integer.
pub fn rhbs_total_over_gaps(m_gaps: usize) -> i128 {
    debug_assert!(m_gaps >= 1);
    let m = m_gaps as i128;
    let q = ceil_lg(m_gaps as u64) as i128;
    m * (q + 1) - (1i128 << q)
}

/// Average comparisons for a uniformly placed key: `ceil(lg m) + 1 - 2^ceil(lg m)/m`.
pub fn rhbs_average<S: Scalar>(m_gaps: usize) -> Result<Expectation<S>> {
    if m_gaps == 0 {
        return Err(Error::domain("rhbs_average needs m_gaps >= 1"));
    }
    Ok(Expectation::formula(S::from_ratio(
        rhbs_total_over_gaps(m_gaps),
        m_gaps as u128,
    )))
}
