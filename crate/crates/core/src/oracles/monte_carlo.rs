use crate::algorithm::Algorithm;
use crate::analytics::Expectation;
use crate::counting::permutation_from_stream;
use crate::error::{Error, Result};

/// Sample statistics of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSummary {
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
    pub min: u64,
    pub max: u64,
}

impl McSummary {
    pub fn expectation(&self) -> Expectation<f64> {
        Expectation::monte_carlo(self.mean, self.std_error)
    }
}

/// Sorts `trials` random permutations of `1..=n`; trial `t` uses ChaCha
/// stream `t` of `seed`, so results do not depend on evaluation order.
pub fn monte_carlo_summary(alg: Algorithm, n: usize, trials: u64, seed: u64) -> Result<McSummary> {
    if trials == 0 {
        return Err(Error::domain("monte_carlo needs at least one trial"));
    }
    if !alg.accepts(n) {
        return Err(Error::domain(format!("{alg} does not accept n = {n}")));
    }
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    let (mut min, mut max) = (u64::MAX, 0u64);
    for t in 0..trials {
        let keys = permutation_from_stream(n, seed, t);
        let c = alg.count(&keys)?;
        sum += c as u128;
        sum_sq += (c as u128) * (c as u128);
        min = min.min(c);
        max = max.max(c);
    }
    let tr = trials as u128;
    let mean = sum as f64 / trials as f64;
    let std_error = if trials > 1 {
        // (T sum_sq - sum^2) / (T^2 (T - 1)) is the variance of the mean
        let spread = tr * sum_sq - sum * sum;
        (spread as f64 / (tr as f64 * tr as f64 * (tr - 1) as f64)).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(McSummary { trials, seed, mean, std_error, min, max })
}

/// Mean comparisons with a one-standard-error band.
pub fn monte_carlo(alg: Algorithm, n: usize, trials: u64, seed: u64) -> Result<Expectation<f64>> {
    Ok(monte_carlo_summary(alg, n, trials, seed)?.expectation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::Source;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = monte_carlo(Algorithm::OneTwoStar, 50, 200, 7).unwrap();
        let b = monte_carlo(Algorithm::OneTwoStar, 50, 200, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.source, Source::MonteCarlo);
        assert!(a.error_band.unwrap() > 0.0);
        let c = monte_carlo(Algorithm::OneTwoStar, 50, 200, 8).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn zero_trials_refused() {
        assert!(monte_carlo(Algorithm::Binary, 10, 0, 1).is_err());
    }
}
