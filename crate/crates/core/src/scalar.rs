//! Numeric abstractions.
//!
//! [`Real`] is what the closed-form formulas need: transcendental functions and
//! the usual float constants. [`Scalar`] is what the exact engines need: field
//! arithmetic plus a way to build a value from an integer ratio. `f32`/`f64`
//! implement both; [`Rational`](crate::Rational) implements only [`Scalar`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar for closed-form evaluation.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal. Exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable as a float")
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

/// Field scalar used to accumulate exact or high-precision expectations.
pub trait Scalar: Clone + Debug + PartialOrd + Num + ToPrimitive + Send + Sync {
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i128, den: u128) -> Self;

    fn from_int(n: i128) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Sums a sequence of values. Float implementations compensate rounding.
    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Neumaier-compensated summation.
fn neumaier<T: Float>(items: impl IntoIterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut carry = T::zero();
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry = carry + ((sum - t) + x);
        } else {
            carry = carry + ((x - t) + sum);
        }
        sum = t;
    }
    sum + carry
}

impl Scalar for f64 {
    fn from_ratio(num: i128, den: u128) -> Self {
        num as f64 / den as f64
    }

    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        neumaier(items)
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i128, den: u128) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn sum_all<I: IntoIterator<Item = Self>>(items: I) -> Self {
        neumaier(items)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i128, den: u128) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_construction_agrees_across_scalars() {
        let exact = BigRational::from_ratio(-3, 5);
        assert_eq!(exact.to_f64_lossy(), f64::from_ratio(-3, 5));
        assert_eq!(BigRational::from_int(7), BigRational::from_ratio(14, 2));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let items = std::iter::once(1.0e16).chain(std::iter::repeat_n(1.0, 1000));
        assert_eq!(f64::sum_all(items.chain(std::iter::once(-1.0e16))), 1000.0);
    }
}
