//! Whole-sort formula totals and the linear-term constant `c`.
//!
//! Totals are direct sums of the per-round formulas rather than their
//! integral approximations, so no quadrature error enters the constants.

use super::constants::MERGE_INSERTION_BEST;
use super::steps::{b_term, d_binary, d_fun, d_star};
use super::{Expectation, Source};
use crate::algorithm::Algorithm;
use crate::combination::choose_n_prime;
use crate::counting::{ceil_lg, PFraction};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::sorters::VariantPolicy;

fn p_len<T: Real>(n: usize) -> T {
    PFraction::<T>::of_len(n).expect("n >= 1").value()
}

/// Formula cost of one round of length `i`:
/// `ceil(lg i) + ceil(lg(i-1)) + 2 D(p_i)` with `D` chosen by `policy`.
pub fn round_formula<T: Real>(i: usize, policy: VariantPolicy) -> Result<T> {
    if i < 4 || i % 2 != 0 {
        return Err(Error::domain(format!("round length must be even and >= 4, got {i}")));
    }
    let p = p_len::<T>(i);
    let d = match policy {
        VariantPolicy::Binary => d_binary(p)?,
        VariantPolicy::OneTwo => d_fun(p)?,
        VariantPolicy::OneTwoStar => d_star(p)?,
    };
    let lg = T::from_u32(ceil_lg(i as u64) + ceil_lg(i as u64 - 1)).unwrap();
    Ok(lg + d + d)
}

/// MergeInsertion at its best sizes: `n lg n - (3 - lg 3) n`.
pub fn merge_insertion_prefix_cost<T: Real>(n: usize) -> T {
    if n < 2 {
        return T::zero();
    }
    let nf = T::from_usize_lossy(n);
    nf * nf.log2() - T::lit(MERGE_INSERTION_BEST) * nf
}

fn lg_band<T: Real>(n: usize) -> T {
    T::from_usize_lossy(n.max(2)).log2()
}

/// Formula total for sorting `n` keys.
///
/// BinaryInsertion sums the exact single-insertion averages. The paired
/// sorters sum round formulas; the combination adds the MergeInsertion prefix
/// cost. MergeInsertion itself (and the combination wherever its policy falls
/// back to MergeInsertion) has no closed form here.
pub fn total_formula<T: Real>(alg: Algorithm, n: usize) -> Result<Expectation<T>> {
    if n < 2 {
        return Err(Error::domain("total_formula needs n >= 2"));
    }
    let rounds = |policy: VariantPolicy, from: usize| -> Result<T> {
        let terms = (from..=n).step_by(2).map(|i| round_formula::<T>(i, policy));
        let mut acc = T::zero();
        for t in terms {
            acc = acc + t?;
        }
        Ok(acc)
    };
    let even = |n: usize| {
        if n % 2 == 0 {
            Ok(())
        } else {
            Err(Error::domain(format!("paired formulas need even n, got {n}")))
        }
    };
    match alg {
        Algorithm::Binary => {
            let mut terms = Vec::with_capacity(n);
            for i in 2..=n {
                terms.push(ceil_lg(i as u64) as f64 + b_term::<f64>(i)?);
            }
            Ok(Expectation { value: T::lit(f64::sum_all(terms)), source: Source::Formula, error_band: None })
        }
        Algorithm::OneTwo | Algorithm::OneTwoStar => {
            even(n)?;
            let policy = alg.variant_policy().expect("paired sorter");
            let value = T::one() + rounds(policy, 4)?;
            Ok(Expectation { value, source: Source::Formula, error_band: Some(lg_band(n)) })
        }
        Algorithm::MergeInsertion => Err(Error::NoClosedForm("MergeInsertion average".into())),
        Algorithm::Combination(policy) => {
            even(n)?;
            if policy.uses_merge_insertion_only(n) {
                return Err(Error::NoClosedForm(format!(
                    "combination with policy {} runs plain MergeInsertion at n = {n}",
                    policy.name()
                )));
            }
            let choice = choose_n_prime(n)?;
            let value = merge_insertion_prefix_cost::<T>(choice.n_prime)
                + rounds(VariantPolicy::OneTwoStar, choice.n_prime + 2)?;
            Ok(Expectation { value, source: Source::Formula, error_band: Some(lg_band(n)) })
        }
    }
}

/// `(total - n lg n) / n`.
pub fn constant_of<T: Real>(total: T, n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    (total - nf * nf.log2()) / nf
}

/// Linear-term constant of [`total_formula`].
pub fn c_constant<T: Real>(alg: Algorithm, n: usize) -> Result<T> {
    Ok(constant_of(total_formula::<T>(alg, n)?.value, n))
}

/// Formula totals for every even `n` up to a cap, from one prefix sum of the
/// round formulas.
#[derive(Debug, Clone)]
pub struct FormulaCurve {
    alg: Algorithm,
    /// `cum[k]` = sum of round formulas for `i = 4, 6, ..., 2k`.
    cum: Vec<f64>,
}

impl FormulaCurve {
    pub fn build(alg: Algorithm, n_max: usize) -> Result<Self> {
        let policy = match alg {
            Algorithm::OneTwo => VariantPolicy::OneTwo,
            Algorithm::OneTwoStar | Algorithm::Combination(_) => VariantPolicy::OneTwoStar,
            _ => return Err(Error::domain(format!("no round curve for {alg}"))),
        };
        let mut cum = vec![0.0; n_max / 2 + 1];
        let (mut sum, mut carry) = (0f64, 0f64);
        for k in 2..=n_max / 2 {
            // Kahan step keeps the running total exact to a few ulps
            let y = round_formula::<f64>(2 * k, policy)? - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            cum[k] = sum;
        }
        Ok(FormulaCurve { alg, cum })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.alg
    }

    pub fn n_max(&self) -> usize {
        2 * (self.cum.len() - 1)
    }

    /// Same value as [`total_formula`] for even `n <= n_max`.
    pub fn total(&self, n: usize) -> Result<f64> {
        if n < 2 || n % 2 != 0 || n > self.n_max() {
            return Err(Error::domain(format!("n = {n} outside the curve (even, 2..={})", self.n_max())));
        }
        match self.alg {
            Algorithm::Combination(policy) => {
                if policy.uses_merge_insertion_only(n) {
                    return Err(Error::NoClosedForm(format!("combination falls back to MergeInsertion at n = {n}")));
                }
                let np = choose_n_prime(n)?.n_prime;
                Ok(merge_insertion_prefix_cost::<f64>(np) + self.cum[n / 2] - self.cum[np / 2])
            }
            _ => Ok(1.0 + self.cum[n / 2]),
        }
    }

    pub fn constant(&self, n: usize) -> Result<f64> {
        Ok(constant_of(self.total(n)?, n))
    }
}

/// A point of a constant curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub n: usize,
    pub c: f64,
}

/// Even `n` nearest to `p * scale`.
pub fn even_near(p: f64, scale: usize) -> usize {
    let x = p * scale as f64 / 2.0;
    2 * (x.round() as usize).max(1)
}

/// Samples `c` at `n ~ p * scale` for `points` values of `p` evenly spaced in
/// `(1/2, 1]`. Points without a closed form are skipped.
pub fn constant_grid(curve: &FormulaCurve, scale: usize, points: usize) -> Result<Vec<CurvePoint>> {
    let mut out = Vec::with_capacity(points);
    for j in 1..=points {
        let p = 0.5 + 0.5 * j as f64 / points as f64;
        let n = even_near(p, scale);
        match curve.constant(n) {
            Ok(c) => out.push(CurvePoint { p: p_len::<f64>(n), n, c }),
            Err(Error::NoClosedForm(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The largest (worst) constant on a grid.
pub fn max_constant(curve: &FormulaCurve, scale: usize, points: usize) -> Result<CurvePoint> {
    constant_grid(curve, scale, points)?
        .into_iter()
        .max_by(|a, b| a.c.total_cmp(&b.c))
        .ok_or_else(|| Error::domain("empty grid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combination::CombinationPolicy;

    #[test]
    fn round_formula_at_power_of_two() {
        // p = 1: D = 0, so the round costs ceil(lg i) + ceil(lg(i-1))
        assert_eq!(round_formula::<f64>(1024, VariantPolicy::OneTwo).unwrap(), 20.0);
        assert!(round_formula::<f64>(5, VariantPolicy::OneTwo).is_err());
    }

    #[test]
    fn curve_matches_direct_totals() {
        for alg in [Algorithm::OneTwo, Algorithm::OneTwoStar, Algorithm::Combination(CombinationPolicy::Auto)] {
            let curve = FormulaCurve::build(alg, 5000).unwrap();
            for n in [4usize, 100, 682, 1000, 2048, 3000, 4998] {
                let direct = total_formula::<f64>(alg, n);
                let fast = curve.total(n);
                match (direct, fast) {
                    (Ok(d), Ok(f)) => assert!((d.value - f).abs() < 1e-8, "{alg} n={n}"),
                    (Err(Error::NoClosedForm(_)), Err(Error::NoClosedForm(_))) => {}
                    other => panic!("{alg} n={n}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn binary_total_matches_sum() {
        let t = total_formula::<f64>(Algorithm::Binary, 4).unwrap().value;
        assert!((t - 14.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn merge_insertion_has_no_closed_form() {
        assert!(matches!(total_formula::<f64>(Algorithm::MergeInsertion, 100), Err(Error::NoClosedForm(_))));
        let auto = Algorithm::Combination(CombinationPolicy::Auto);
        assert!(matches!(total_formula::<f64>(auto, 2700), Err(Error::NoClosedForm(_))));
        let forced = Algorithm::Combination(CombinationPolicy::Combination);
        assert!(total_formula::<f64>(forced, 2700).is_ok());
    }
}
