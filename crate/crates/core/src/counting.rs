//! Counting infrastructure shared by every algorithm: rank keys, the
//! comparison tally, sorted sequences, permutation generation and the
//! `p_x = x / 2^ceil(lg x)` helper.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A distinct, orderable key identified by its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(pub u32);

impl Key {
    pub fn rank(self) -> u32 {
        self.0
    }
}

impl From<u32> for Key {
    fn from(v: u32) -> Self {
        Key(v)
    }
}

/// Per-run comparison counter. Every key-key comparison in the crate goes
/// through [`Tally::compare`].
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Tally {
    count: u64,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Compares two keys, counting one comparison. Equal keys are rejected.
    #[inline]
    pub fn compare<K: Ord + ?Sized>(&mut self, a: &K, b: &K) -> Result<Ordering> {
        self.count += 1;
        match a.cmp(b) {
            Ordering::Equal => Err(Error::DuplicateKey),
            ord => Ok(ord),
        }
    }

    /// `a < b`, counted.
    #[inline]
    pub fn less<K: Ord + ?Sized>(&mut self, a: &K, b: &K) -> Result<bool> {
        Ok(self.compare(a, b)? == Ordering::Less)
    }
}

/// Free-function form of [`Tally::compare`].
pub fn counting_compare<K: Ord + ?Sized>(a: &K, b: &K, tally: &mut Tally) -> Result<Ordering> {
    tally.compare(a, b)
}

/// `ceil(lg n)` for `n >= 1`; `ceil_lg(1) == 0`.
#[inline]
pub fn ceil_lg(n: u64) -> u32 {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `2^ceil(lg n)`.
#[inline]
pub fn next_pow2(n: u64) -> u64 {
    1u64 << ceil_lg(n)
}

/// `x / 2^ceil(lg x)`, always in `(1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PFraction<T>(T);

impl<T: Real> PFraction<T> {
    pub fn value(self) -> T {
        self.0
    }

    /// `p_n` for an integer length; exact whenever `n` fits the mantissa.
    pub fn of_len(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("p_n needs n >= 1"));
        }
        let num = T::from_usize_lossy(n);
        let den = T::from_u64(next_pow2(n as u64)).expect("power of two is representable");
        Ok(PFraction(num / den))
    }

    /// Checks that `v` lies in `(1/2, 1]`.
    pub fn try_new(v: T) -> Result<Self> {
        let half = T::lit(0.5);
        if v > half && v <= T::one() {
            Ok(PFraction(v))
        } else {
            Err(Error::domain(format!("p = {v:?} outside (1/2, 1]")))
        }
    }
}

/// `p_x` for a real `x >= 1`.
pub fn p_of<T: Real>(x: T) -> Result<PFraction<T>> {
    if !(x >= T::one()) || !x.is_finite() {
        return Err(Error::domain(format!("p_x needs finite x >= 1, got {x:?}")));
    }
    Ok(PFraction(p_fraction_positive(x)))
}

/// `x / 2^ceil(lg x)` for any finite `x > 0`.
pub(crate) fn p_fraction_positive<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut e = x.log2().ceil().to_i32().unwrap_or(0);
    while two.powi(e) < x {
        e += 1;
    }
    while two.powi(e - 1) >= x {
        e -= 1;
    }
    x / two.powi(e)
}

/// Uniform random permutation of the ranks `1..=n`.
///
/// The generator is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`;
/// the shuffle is the descending Fisher-Yates walk drawing `j` uniformly from
/// `0..=k` at each position `k`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<Key> {
    permutation_from_stream(n, seed, 0)
}

/// Same generator as [`random_permutation`] on ChaCha stream `stream`; used to
/// give every Monte Carlo trial its own reproducible sequence.
pub fn permutation_from_stream(n: usize, seed: u64, stream: u64) -> Vec<Key> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut keys: Vec<Key> = (1..=n as u32).map(Key).collect();
    for k in (1..keys.len()).rev() {
        let j = rng.random_range(0..=k);
        keys.swap(k, j);
    }
    keys
}

/// True iff `output` is strictly increasing and a permutation of `input`.
/// Verification helper; its comparisons are not tallied.
pub fn is_sorted_permutation<K: Ord + Clone>(input: &[K], output: &[K]) -> bool {
    if input.len() != output.len() {
        return false;
    }
    if output.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    let mut expected = input.to_vec();
    expected.sort();
    expected.as_slice() == output
}

/// A strictly increasing sequence of keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedSeq<K> {
    items: Vec<K>,
}

impl<K: Ord> SortedSeq<K> {
    pub fn empty() -> Self {
        SortedSeq { items: Vec::new() }
    }

    /// Validates strict increase (uncounted).
    pub fn new(items: Vec<K>) -> Result<Self> {
        if items.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("sequence is not strictly increasing"));
        }
        Ok(SortedSeq { items })
    }

    pub(crate) fn from_vec_unchecked(items: Vec<K>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        SortedSeq { items }
    }

    pub(crate) fn insert_at(&mut self, gap: usize, key: K) {
        self.items.insert(gap, key);
    }

    pub fn as_slice(&self) -> &[K] {
        &self.items
    }

    pub fn into_vec(self) -> Vec<K> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl<K> AsRef<[K]> for SortedSeq<K> {
    fn as_ref(&self) -> &[K] {
        &self.items
    }
}
