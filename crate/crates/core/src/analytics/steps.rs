//! Per-insertion and per-step average costs.

use num_bigint::BigUint;
use num_traits::One;

use super::constants::*;
use super::Expectation;
use crate::counting::{ceil_lg, next_pow2, p_fraction_positive, PFraction};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::two_merge::MergeVariant;

#[inline]
fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

fn check_p<T: Real>(p: T) -> Result<T> {
    PFraction::try_new(p).map(PFraction::value)
}

fn check_even_round(i: usize) -> Result<()> {
    if i < 4 || i % 2 != 0 {
        return Err(Error::domain(format!("round length must be even and >= 4, got {i}")));
    }
    Ok(())
}

fn p_len<T: Real>(n: usize) -> T {
    PFraction::<T>::of_len(n).expect("n >= 1").value()
}

fn ceil_lg_t<T: Real>(n: usize) -> T {
    T::from_u32(ceil_lg(n as u64)).unwrap()
}

/// `B(i) = 1 - 2^ceil(lg i) / i`, exactly.
pub fn b_term<S: Scalar>(i: usize) -> Result<S> {
    if i == 0 {
        return Err(Error::domain("B(i) needs i >= 1"));
    }
    let pow = next_pow2(i as u64) as i128;
    Ok(S::from_ratio(i as i128 - pow, i as u128))
}

/// Linear coefficient of BinaryInsertion: `1 - lg p - (1 + ln 4p) / p`.
pub fn binary_coefficient<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    Ok(T::one() - p.log2() - (T::one() + (lit::<T>(4.0) * p).ln()) / p)
}

/// Asymptotic BinaryInsertion total `n lg n + (1 - lg p_n - (1 + ln 4p_n)/p_n) n`,
/// with an `O(log n)` band.
pub fn binary_total<T: Real>(n: usize) -> Result<Expectation<T>> {
    if n < 2 {
        return Err(Error::domain("binary_total needs n >= 2"));
    }
    let nf = T::from_usize_lossy(n);
    let value = nf * nf.log2() + binary_coefficient(p_len::<T>(n))? * nf;
    Ok(Expectation { value, source: super::Source::Formula, error_band: Some(nf.log2()) })
}

/// Which of the three `(1+sqrt2)/4`, `(2+sqrt2)/4` intervals `p` falls in.
pub fn split_branch<T: Real>(p: T) -> usize {
    if p <= lit(SPLIT_LOW) {
        0
    } else if p <= lit(SPLIT_HIGH) {
        1
    } else {
        2
    }
}

/// The piecewise `T(p)` in the expected step-3 cost `ceil(lg i) + T(p_i)`.
pub fn t_of_p<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    let s2 = T::SQRT_2();
    let one = T::one();
    let base = lit::<T>(5.0) - lit::<T>(4.0) * s2 - one / p + one / (lit::<T>(6.0) * p * p);
    let tail = match split_branch(p) {
        0 => -one / (lit::<T>(6.0) * p) - one / (lit::<T>(16.0) * p * p) - lit::<T>(2.0) / lit(3.0),
        1 => -s2 / (lit::<T>(3.0) * p) - one / lit(3.0),
        _ => -lit::<T>(4.0) / (lit::<T>(3.0) * p) + one / (lit::<T>(4.0) * p * p) + one / lit(3.0),
    };
    Ok(base + tail)
}

/// `T(i)` evaluated at `p_i`.
pub fn t_fun<T: Real>(i: usize) -> Result<T> {
    check_even_round(i)?;
    t_of_p(p_len::<T>(i))
}

/// `U` with both `p_i` and `p_{i-1}` replaced by `p`.
pub fn u_of_p<T: Real>(p: T) -> Result<T> {
    let t = t_of_p(p)?;
    Ok(T::one() + t - lit::<T>(2.0) / p + T::one() / (lit::<T>(3.0) * p * p))
}

/// `U(i) = 1 + T(i) - 2/p_{i-1} + 1/(3 p_{i-1}^2)`.
pub fn u_fun<T: Real>(i: usize) -> Result<T> {
    check_even_round(i)?;
    let q = p_len::<T>(i - 1);
    Ok(T::one() + t_fun::<T>(i)? - lit::<T>(2.0) / q + T::one() / (lit::<T>(3.0) * q * q))
}

/// Per-insertion 2Merge cost above `ceil(lg i)`, without the window clipping.
pub fn d_merge_branch<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    let s2 = T::SQRT_2();
    let one = T::one();
    Ok(match split_branch(p) {
        0 => lit::<T>(25.0) / lit(6.0) - lit::<T>(2.0) * s2 - lit::<T>(19.0) / (lit::<T>(12.0) * p)
            + lit::<T>(7.0) / (lit::<T>(32.0) * p * p),
        1 => lit::<T>(13.0) / lit(3.0) - lit::<T>(2.0) * s2 - (lit::<T>(9.0) + s2) / (lit::<T>(6.0) * p)
            + one / (lit::<T>(4.0) * p * p),
        _ => lit::<T>(14.0) / lit(3.0) - lit::<T>(2.0) * s2 - lit::<T>(13.0) / (lit::<T>(6.0) * p)
            + lit::<T>(3.0) / (lit::<T>(8.0) * p * p),
    })
}

/// Per-insertion binary insertion cost above `ceil(lg i)`: `1 - 1/p`.
pub fn d_binary<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    Ok(T::one() - T::one() / p)
}

/// Step cost of (1,2)Insertion: 2Merge inside `[0.5511, 0.888]`, binary elsewhere.
pub fn d_fun<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    if p >= lit(TWO_MERGE_WINDOW.0) && p <= lit(TWO_MERGE_WINDOW.1) {
        d_merge_branch(p)
    } else {
        d_binary(p)
    }
}

/// Per-insertion 2Merge* cost above `ceil(lg i)`, without window clipping.
pub fn d_star_merge_branch<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    Ok(d_binary(p)? + star_bracket(p))
}

fn star_bracket<T: Real>(p: T) -> T {
    if p <= lit(STAR_SPLIT) {
        lit::<T>(0.5) - lit::<T>(3.0) / (lit::<T>(4.0) * p) + lit::<T>(25.0) / (lit::<T>(96.0) * p * p)
    } else {
        T::one() - lit::<T>(3.0) / (lit::<T>(2.0) * p) + lit::<T>(13.0) / (lit::<T>(24.0) * p * p)
    }
}

/// Step cost of (1,2)Insertion*.
pub fn d_star<T: Real>(p: T) -> Result<T> {
    let p = check_p(p)?;
    if p >= lit(STAR_WINDOW_LOW) && p <= lit(STAR_WINDOW_HIGH) {
        d_star_merge_branch(p)
    } else {
        d_binary(p)
    }
}

fn inv_i<T: Real>(i: usize) -> T {
    T::one() / T::from_usize_lossy(i)
}

/// Average step-3 cost given the pivot walk stopped at `r`:
/// `ceil(lg w_r) + 7 - 4 sqrt2 - (10 - 6 sqrt2)/p_r + (3 - 2 sqrt2)/p_r^2`
/// with `w_r = (sqrt2 - 1) 2^(-r/2) i`. Band: `2^(r/2) / i`.
pub fn a_step3<T: Real>(i: usize, r: u32) -> Result<Expectation<T>> {
    check_even_round(i)?;
    let max_r = max_pivot_rounds(i);
    if r == 0 || r > max_r {
        return Err(Error::domain(format!("r = {r} outside 1..={max_r}")));
    }
    let s2 = T::SQRT_2();
    let half_r = T::from_u32(r).unwrap() / lit(2.0);
    let w = (s2 - T::one()) * lit::<T>(2.0).powf(-half_r) * T::from_usize_lossy(i);
    let pr = p_fraction_positive(w);
    let lgw = (w / pr).log2().round();
    let value = lgw + lit::<T>(7.0) - lit::<T>(4.0) * s2 - (lit::<T>(10.0) - lit::<T>(6.0) * s2) / pr
        + (lit::<T>(3.0) - lit::<T>(2.0) * s2) / (pr * pr);
    let band = lit::<T>(2.0).powf(half_r) * inv_i::<T>(i);
    Ok(Expectation::formula_with_band(value, band))
}

/// Loop bound of the pivot walk, `ceil(2 lg i)`.
pub fn max_pivot_rounds(i: usize) -> u32 {
    // ceil(2 lg i) = ceil(lg i^2)
    ceil_lg((i as u64) * (i as u64))
}

/// Expected step-4 cost `ceil(lg(i-1)) + 1 - 2/p_i + 1/(3 p_i^2)`, band `1/i`.
pub fn step4_expected<T: Real>(i: usize) -> Result<Expectation<T>> {
    check_even_round(i)?;
    let p = p_len::<T>(i);
    let value = ceil_lg_t::<T>(i - 1) + T::one() - lit::<T>(2.0) / p + T::one() / (lit::<T>(3.0) * p * p);
    Ok(Expectation::formula_with_band(value, inv_i(i)))
}

/// Exact step-4 average from the closed-form sums
/// `1 + (m C(i,2) - i 2^m + 4^m/6 + 2^m/2 + 1/3) / C(i,2)`, `m = ceil(lg(i-1))`.
pub fn step4_exact_sum<S: Scalar>(i: usize) -> Result<S> {
    check_even_round(i)?;
    let m = ceil_lg(i as u64 - 1);
    let pairs = (i * (i - 1) / 2) as i128;
    let pow = 1i128 << m;
    // Scale by 6 to clear denominators.
    let num6 = 6 * (m as i128) * pairs - 6 * (i as i128) * pow + pow * pow + 3 * pow + 2;
    Ok(S::one() + S::from_ratio(num6, 6 * pairs as u128))
}

/// Steps 2+3 of 2Merge* (locating the smaller key), including the step-2
/// comparisons: Case I `ceil(lg i) + 2 - 3/p + 3/(4p^2)` for `p in (3/4, 1]`,
/// Case II `ceil(lg i) + 1 - 3/(2p) + 3/(16p^2)` for `p in (1/2, 3/4]`.
pub fn star_locate_expected<T: Real>(i: usize) -> Result<Expectation<T>> {
    check_even_round(i)?;
    let p = p_len::<T>(i);
    let c = ceil_lg_t::<T>(i);
    let value = if p > lit(STAR_SPLIT) {
        c + lit::<T>(2.0) - lit::<T>(3.0) / p + lit::<T>(3.0) / (lit::<T>(4.0) * p * p)
    } else {
        c + T::one() - lit::<T>(3.0) / (lit::<T>(2.0) * p) + lit::<T>(3.0) / (lit::<T>(16.0) * p * p)
    };
    Ok(Expectation::formula_with_band(value, inv_i(i)))
}

/// Per-insertion cost of 2Merge*:
/// `ceil(lg i) + B(i) + {1/2 - 3/(4p) + 25/(96p^2) | 1 - 3/(2p) + 13/(24p^2)}`.
pub fn per_step_two_merge_star<T: Real>(i: usize) -> Result<Expectation<T>> {
    check_even_round(i)?;
    let p = p_len::<T>(i);
    let b: f64 = b_term(i)?;
    let value = ceil_lg_t::<T>(i) + lit(b) + star_bracket(p);
    Ok(Expectation::formula_with_band(value, inv_i(i)))
}

/// Per-insertion cost of plain 2Merge: `ceil(lg i) + U(i)/2 + 3/2`.
pub fn per_step_two_merge<T: Real>(i: usize) -> Result<Expectation<T>> {
    check_even_round(i)?;
    let value = ceil_lg_t::<T>(i) + u_fun::<T>(i)? / lit(2.0) + lit(1.5);
    Ok(Expectation::formula_with_band(value, inv_i(i)))
}

/// Moments of the stop index `r` of the pivot walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopMoments<T> {
    pub mean_r: T,
    pub mean_floor_half: T,
    pub mean_ceil_half: T,
    pub mean_inv_p: T,
    pub mean_inv_p2: T,
}

/// Formula-side moments for the plain pivot schedule; band `1/i` each.
pub fn r_moments<T: Real>(i: usize, variant: MergeVariant) -> Result<(StopMoments<T>, T)> {
    check_even_round(i)?;
    if variant == MergeVariant::Star {
        return Err(Error::NoClosedForm("stop-index moments of the star schedule".into()));
    }
    let p = p_len::<T>(i);
    let k = lit::<T>(3.0) + lit::<T>(2.0) * T::SQRT_2();
    let h = lit::<T>(3.0) * T::SQRT_2() + lit::<T>(5.0);
    let (inv_p, inv_p2) = match split_branch(p) {
        0 => (h / (lit::<T>(12.0) * p), lit::<T>(5.0) * k / (lit::<T>(48.0) * p * p)),
        1 => (k / (lit::<T>(6.0) * p), k / (lit::<T>(6.0) * p * p)),
        _ => (h / (lit::<T>(6.0) * p), lit::<T>(5.0) * k / (lit::<T>(12.0) * p * p)),
    };
    let moments = StopMoments {
        mean_r: lit(2.0),
        mean_floor_half: lit::<T>(2.0) / lit(3.0),
        mean_ceil_half: lit::<T>(4.0) / lit(3.0),
        mean_inv_p: inv_p,
        mean_inv_p2: inv_p2,
    };
    Ok((moments, inv_i(i)))
}

/// `p_r` for the real-valued block width `w_r = (sqrt2 - 1) 2^(-r/2) i`.
pub fn p_of_block_width<T: Real>(i: usize, r: u32) -> T {
    let w = (T::SQRT_2() - T::one())
        * lit::<T>(2.0).powf(-T::from_u32(r).unwrap() / lit(2.0))
        * T::from_usize_lossy(i);
    p_fraction_positive(w)
}

/// `ceil(lg n!)`, computed exactly from the integer `n!`.
pub fn info_lower_bound(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("info_lower_bound needs n >= 1"));
    }
    let mut fact = BigUint::one();
    for k in 2..=n as u64 {
        fact *= k;
    }
    let bits = fact.bits();
    let is_pow2 = fact.trailing_zeros() == Some(bits - 1);
    Ok(if is_pow2 { bits - 1 } else { bits })
}

/// `lg n!` as a float, by summing `lg k`.
pub fn lg_factorial(n: usize) -> f64 {
    f64::sum_all((2..=n).map(|k| (k as f64).log2()))
}
