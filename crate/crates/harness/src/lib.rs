//! Experiment runner for `sortlab`: figure data as CSV and the invariant
//! suites behind `sortlab verify`.

pub mod experiments;
pub mod output;
pub mod verify;

use thiserror::Error;

pub use experiments::{run_fig1, run_fig2, ExperimentSpec, Fig2Row};
pub use output::{write_csv, ResultRow, Sink};
pub use verify::{run_verify, Suite, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] sortlab::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("usage: {0}")]
    Usage(String),
}

impl HarnessError {
    /// 2 for usage errors, 3 for I/O; library errors count as usage (bad parameters).
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Io(_) | HarnessError::Csv(_) => 3,
            HarnessError::Usage(_) | HarnessError::Core(_) => 2,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

/// Exit status of a verify run with failures.
pub const EXIT_VERIFY_FAILED: u8 = 1;
