//! Figure data.

use serde::Serialize;
use sortlab::analytics::{per_step_two_merge_star, total_formula};
use sortlab::oracles::{monte_carlo, pair_enumeration_expectation, ExactCurve, EXACT_CAP, PREFIX_SEED, PREFIX_TRIALS};
use sortlab::sorters::VariantPolicy;
use sortlab::{Algorithm, CombinationPolicy, Error, MergeVariant, PFraction, Source};

use crate::output::ResultRow;
use crate::{HarnessError, Result};

/// Parameters shared by the sweep commands.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub algorithms: Vec<Algorithm>,
    pub from: usize,
    pub to: usize,
    pub step: usize,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentSpec {
    /// The curves of the constant-vs-`p_n` figure over `[from, to]`.
    pub fn fig1(from: usize, to: usize, step: usize) -> Self {
        ExperimentSpec {
            algorithms: vec![
                Algorithm::OneTwo,
                Algorithm::OneTwoStar,
                Algorithm::Combination(CombinationPolicy::Auto),
                Algorithm::MergeInsertion,
            ],
            from,
            to,
            step,
            trials: 100,
            seed: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.from < 2 || self.to < self.from || self.step == 0 {
            return Err(HarnessError::Usage(format!(
                "need 2 <= from <= to and step >= 1 (got {}..={} step {})",
                self.from, self.to, self.step
            )));
        }
        let paired = self.algorithms.iter().any(|a| !matches!(a, Algorithm::Binary | Algorithm::MergeInsertion));
        if paired && (self.from % 2 != 0 || self.step % 2 != 0) {
            return Err(HarnessError::Usage("paired algorithms need even from and step".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Usage("no algorithms selected".into()));
        }
        Ok(())
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        (self.from..=self.to).step_by(self.step)
    }
}

fn curve_policy(alg: Algorithm) -> Option<VariantPolicy> {
    match alg {
        Algorithm::OneTwo => Some(VariantPolicy::OneTwo),
        Algorithm::OneTwoStar | Algorithm::Combination(_) => Some(VariantPolicy::OneTwoStar),
        _ => None,
    }
}

/// Constant-vs-`p_n` rows. Paired sorters use the exact engine up to its cap
/// and formula plus Monte Carlo beyond it; MergeInsertion is always sampled.
pub fn run_fig1(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let exact_to = spec.to.min(EXACT_CAP) / 2 * 2;
    let mut curves: Vec<ExactCurve> = Vec::new();
    let mut rows = Vec::new();
    for n in spec.sizes() {
        for &alg in &spec.algorithms {
            match (alg, curve_policy(alg)) {
                (Algorithm::Binary, _) => {
                    let e = total_formula::<f64>(alg, n)?;
                    rows.push(ResultRow::new(alg, n, &e, None, None));
                }
                (_, Some(policy)) if n <= exact_to => {
                    if !curves.iter().any(|c| c.policy() == policy) {
                        curves.push(ExactCurve::build(policy, exact_to)?);
                    }
                    let curve = curves.iter().find(|c| c.policy() == policy).unwrap();
                    let e = curve.sort_expectation(alg, n)?;
                    let (seed, trials) = match e.source {
                        Source::MonteCarlo => (Some(PREFIX_SEED), Some(PREFIX_TRIALS)),
                        _ => (None, None),
                    };
                    rows.push(ResultRow::new(alg, n, &e, seed, trials));
                }
                (_, policy) => {
                    if policy.is_some() {
                        match total_formula::<f64>(alg, n) {
                            Ok(e) => rows.push(ResultRow::new(alg, n, &e, None, None)),
                            Err(Error::NoClosedForm(_)) => {}
                            Err(e) => return Err(e.into()),
                        }
                    }
                    let e = monte_carlo(alg, n, spec.trials, spec.seed)?;
                    rows.push(ResultRow::new(alg, n, &e, Some(spec.seed), Some(spec.trials)));
                }
            }
        }
    }
    Ok(rows)
}

/// One point of the all-pairs 2Merge* experiment, per inserted key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Row {
    /// Keys in the universe; the merge target has `n - 2` of them.
    pub n: usize,
    /// Round length, equal to `n`.
    pub i: usize,
    pub p_i: f64,
    /// All-pairs mean of 2Merge* comparisons, halved.
    pub oracle: f64,
    pub formula: f64,
    pub diff: f64,
}

pub const FIG2_HEADER: [&str; 6] = ["n", "i", "p_i", "oracle", "formula", "diff"];

/// All-pairs 2Merge* means against the per-insertion formula, for even
/// `n` in `from..=to`.
pub fn run_fig2(from: usize, to: usize, step: usize) -> Result<Vec<Fig2Row>> {
    if from < 4 || from % 2 != 0 || step == 0 || step % 2 != 0 || to < from {
        return Err(HarnessError::Usage(format!("fig2 needs even 4 <= from <= to and even step (got {from}..={to} step {step})")));
    }
    let mut rows = Vec::new();
    for n in (from..=to).step_by(step) {
        let r = pair_enumeration_expectation(MergeVariant::Star, n)?;
        let oracle = r.mean::<f64>() / 2.0;
        let formula = per_step_two_merge_star::<f64>(n)?.value;
        rows.push(Fig2Row { n, i: n, p_i: PFraction::<f64>::of_len(n)?.value(), oracle, formula, diff: oracle - formula });
    }
    Ok(rows)
}
