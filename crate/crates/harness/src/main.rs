use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sortlab::analytics::total_formula;
use sortlab::counting::{is_sorted_permutation, random_permutation};
use sortlab::oracles::{exact_sort_expectation, exhaustive_average, monte_carlo, EXHAUSTIVE_CAP, PREFIX_SEED, PREFIX_TRIALS};
use sortlab::{Algorithm, CombinationPolicy, Error, Source, Tally};
use sortlab_harness::experiments::FIG2_HEADER;
use sortlab_harness::output::RESULT_HEADER;
use sortlab_harness::{
    run_fig1, run_fig2, run_verify, write_csv, ExperimentSpec, HarnessError, ResultRow, Result, Sink, Suite,
    EXIT_VERIFY_FAILED,
};

#[derive(Parser)]
#[command(name = "sortlab", version, about = "Comparison counts and expected costs of insertion-based sorting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort one seeded random permutation and report the comparison count.
    Sort {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Expected comparisons from the exact engines (exhaustive up to n = 8).
    Expect {
        #[command(flatten)]
        alg: AlgArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monte Carlo estimates.
    Mc {
        #[command(flatten)]
        alg: AlgArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form totals and constants.
    Formulas {
        #[command(flatten)]
        alg: AlgArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Constant-vs-p_n curves of the paired sorters and MergeInsertion.
    Fig1 {
        #[arg(long, default_value_t = 4096)]
        from: usize,
        #[arg(long, default_value_t = 8192)]
        to: usize,
        #[arg(long, default_value_t = 64)]
        step: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_parser = parse_policy, default_value = "auto")]
        policy: CombinationPolicy,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All-pairs 2Merge* means against the per-insertion formula.
    Fig2 {
        #[arg(long, default_value_t = 256)]
        from: usize,
        #[arg(long, default_value_t = 4096)]
        to: usize,
        #[arg(long, default_value_t = 256)]
        step: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run invariant suites: sortedness, rhbs, two_merge, formulas, oracles, all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct AlgArgs {
    /// binary, one_two, one_two_star, merge_insertion, combination
    #[arg(long, value_parser = parse_alg)]
    alg: Algorithm,
    /// Combination policy: auto, combination, merge-insertion-only
    #[arg(long, value_parser = parse_policy)]
    policy: Option<CombinationPolicy>,
}

impl AlgArgs {
    fn resolve(&self) -> Algorithm {
        match (self.alg, self.policy) {
            (Algorithm::Combination(_), Some(p)) => Algorithm::Combination(p),
            (alg, _) => alg,
        }
    }
}

#[derive(Args)]
struct RangeArgs {
    /// A single size; overrides --from/--to.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, default_value_t = 2)]
    step: usize,
}

impl RangeArgs {
    fn sizes(&self) -> Result<Vec<usize>> {
        let (from, to) = match (self.n, self.from, self.to) {
            (Some(n), _, _) => (n, n),
            (None, Some(a), Some(b)) => (a, b),
            _ => return Err(HarnessError::Usage("give --n or both --from and --to".into())),
        };
        if from < 2 || to < from || self.step == 0 {
            return Err(HarnessError::Usage(format!("bad range {from}..={to} step {}", self.step)));
        }
        Ok((from..=to).step_by(self.step).collect())
    }
}

#[derive(Args)]
struct OutArgs {
    /// CSV file to append to; stdout when absent or "-".
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArgs {
    fn sink(&self) -> Sink {
        Sink::from_arg(self.out.as_deref())
    }
}

fn parse_alg(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_policy(s: &str) -> std::result::Result<CombinationPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn expect_row(alg: Algorithm, n: usize) -> Result<ResultRow> {
    let e = if n <= EXHAUSTIVE_CAP {
        exhaustive_average::<f64>(alg, n)?
    } else {
        exact_sort_expectation::<f64>(alg, n)?
    };
    let (seed, trials) = match e.source {
        Source::MonteCarlo => (Some(PREFIX_SEED), Some(PREFIX_TRIALS)),
        _ => (None, None),
    };
    Ok(ResultRow::new(alg, n, &e, seed, trials))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Sort { alg, n, seed } => {
            let alg = alg.resolve();
            let keys = random_permutation(n, seed);
            let mut tally = Tally::new();
            let out = alg.sort(&keys, &mut tally)?;
            let ok = is_sorted_permutation(&keys, out.as_slice());
            println!("{alg} n={n} seed={seed} comparisons={} sorted={ok}", tally.count());
            Ok(if ok { 0 } else { EXIT_VERIFY_FAILED })
        }
        Command::Expect { alg, range, out } => {
            let alg = alg.resolve();
            let rows = range.sizes()?.into_iter().map(|n| expect_row(alg, n)).collect::<Result<Vec<_>>>()?;
            write_csv(&out.sink(), &RESULT_HEADER, &rows)?;
            Ok(0)
        }
        Command::Mc { alg, range, trials, seed, out } => {
            let alg = alg.resolve();
            let mut rows = Vec::new();
            for n in range.sizes()? {
                let e = monte_carlo(alg, n, trials, seed)?;
                rows.push(ResultRow::new(alg, n, &e, Some(seed), Some(trials)));
            }
            write_csv(&out.sink(), &RESULT_HEADER, &rows)?;
            Ok(0)
        }
        Command::Formulas { alg, range, out } => {
            let alg = alg.resolve();
            let mut rows = Vec::new();
            for n in range.sizes()? {
                match total_formula::<f64>(alg, n) {
                    Ok(e) => rows.push(ResultRow::new(alg, n, &e, None, None)),
                    Err(Error::NoClosedForm(why)) => eprintln!("n={n}: skipped, {why}"),
                    Err(e) => return Err(e.into()),
                }
            }
            write_csv(&out.sink(), &RESULT_HEADER, &rows)?;
            Ok(0)
        }
        Command::Fig1 { from, to, step, trials, seed, policy, out } => {
            let mut spec = ExperimentSpec::fig1(from, to, step);
            spec.trials = trials;
            spec.seed = seed;
            for a in spec.algorithms.iter_mut() {
                if let Algorithm::Combination(p) = a {
                    *p = policy;
                }
            }
            write_csv(&out.sink(), &RESULT_HEADER, &run_fig1(&spec)?)?;
            Ok(0)
        }
        Command::Fig2 { from, to, step, out } => {
            write_csv(&out.sink(), &FIG2_HEADER, &run_fig2(from, to, step)?)?;
            Ok(0)
        }
        Command::Verify { suite, json } => {
            let suite: Suite = suite.parse()?;
            let report = run_verify(suite);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for c in &report.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    println!("{tag} {}/{}: {}", c.suite, c.name, c.detail);
                }
                println!("{}: {}", report.suite, if report.passed { "ok" } else { "FAILED" });
            }
            Ok(if report.passed { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
