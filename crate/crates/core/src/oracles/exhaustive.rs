use super::{EXHAUSTIVE_CAP, WORST_CASE_CAP};
use crate::algorithm::Algorithm;
use crate::analytics::Expectation;
use crate::counting::{Key, Tally};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Calls `f` on every permutation of `1..=n` (Heap's algorithm).
pub fn for_each_permutation<F>(n: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[Key]) -> Result<()>,
{
    let mut keys: Vec<Key> = (1..=n as u32).map(Key).collect();
    let mut c = vec![0usize; n];
    f(&keys)?;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                keys.swap(0, i);
            } else {
                keys.swap(c[i], i);
            }
            f(&keys)?;
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn check_cap(engine: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { engine, requested: n, cap });
    }
    Ok(())
}

/// Comparison counts summed over all `n!` inputs, with the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationCensus {
    pub n: usize,
    pub runs: u128,
    pub total: u128,
    pub worst: u64,
}

/// Runs `alg` on every permutation, checking each output.
pub fn permutation_census(alg: Algorithm, n: usize) -> Result<PermutationCensus> {
    if !alg.accepts(n) {
        return Err(Error::domain(format!("{alg} does not accept n = {n}")));
    }
    let (mut total, mut worst) = (0u128, 0u64);
    for_each_permutation(n, |perm| {
        let mut tally = Tally::new();
        let out = alg.sort(perm, &mut tally)?;
        if out.as_slice().iter().enumerate().any(|(j, k)| k.0 as usize != j + 1) {
            return Err(Error::domain(format!("{alg} mis-sorted {perm:?}")));
        }
        total += tally.count() as u128;
        worst = worst.max(tally.count());
        Ok(())
    })?;
    Ok(PermutationCensus { n, runs: factorial(n), total, worst })
}

/// Mean comparisons over all `n!` permutations, exact.
pub fn exhaustive_average<S: Scalar>(alg: Algorithm, n: usize) -> Result<Expectation<S>> {
    exhaustive_average_capped(alg, n, EXHAUSTIVE_CAP)
}

pub fn exhaustive_average_capped<S: Scalar>(alg: Algorithm, n: usize, cap: usize) -> Result<Expectation<S>> {
    check_cap("exhaustive_average", n, cap)?;
    let census = permutation_census(alg, n)?;
    Ok(Expectation::exact(S::from_ratio(census.total as i128, census.runs)))
}

/// Maximum comparisons over all `n!` permutations.
pub fn worst_case(alg: Algorithm, n: usize) -> Result<u64> {
    worst_case_capped(alg, n, WORST_CASE_CAP)
}

pub fn worst_case_capped(alg: Algorithm, n: usize, cap: usize) -> Result<u64> {
    check_cap("worst_case", n, cap)?;
    Ok(permutation_census(alg, n)?.worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            assert!(seen.insert(p.to_vec()));
            Ok(())
        })
        .unwrap();
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn small_examples() {
        let e: Expectation<Rational> = exhaustive_average(Algorithm::Binary, 2).unwrap();
        assert_eq!(e.value, Rational::from_int(1));
        let e: Expectation<Rational> = exhaustive_average(Algorithm::Binary, 4).unwrap();
        assert_eq!(e.value, Rational::from_ratio(14, 3));
        assert_eq!(worst_case(Algorithm::Binary, 4).unwrap(), 5);
        assert_eq!(worst_case(Algorithm::MergeInsertion, 3).unwrap(), 3);
    }

    #[test]
    fn caps_refuse() {
        assert!(matches!(
            exhaustive_average::<f64>(Algorithm::Binary, 9),
            Err(Error::CapExceeded { requested: 9, cap: 8, .. })
        ));
        assert!(worst_case(Algorithm::Binary, 11).is_err());
    }
}
