//! CSV rows and append-safe writing.

use std::fs::OpenOptions;
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sortlab::analytics::constant_of;
use sortlab::{Algorithm, Expectation, PFraction};

use crate::{HarnessError, Result};

/// One measured or computed expectation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub algorithm: String,
    pub n: usize,
    pub p_n: f64,
    pub source: String,
    pub comparisons: f64,
    pub constant_c: f64,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

impl ResultRow {
    pub fn new(alg: Algorithm, n: usize, e: &Expectation<f64>, seed: Option<u64>, trials: Option<u64>) -> Self {
        ResultRow {
            algorithm: alg.name().to_string(),
            n,
            p_n: PFraction::<f64>::of_len(n.max(1)).map(|p| p.value()).unwrap_or(1.0),
            source: e.source.as_str().to_string(),
            comparisons: e.value,
            constant_c: constant_of(e.value, n),
            seed,
            trials,
        }
    }

    /// Whether `constant_c` agrees with `comparisons` and `n`.
    pub fn is_consistent(&self) -> bool {
        (constant_of(self.comparisons, self.n) - self.constant_c).abs() <= 1e-9
    }
}

/// Where rows go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sink {
    Stdout,
    /// Appended to; the header is written only when the file is new or empty.
    File(PathBuf),
}

impl Sink {
    pub fn from_arg(out: Option<&Path>) -> Self {
        match out {
            Some(p) if p != Path::new("-") => Sink::File(p.to_path_buf()),
            _ => Sink::Stdout,
        }
    }
}

/// Writes serializable rows with a LF-terminated header.
///
/// Appending to a file whose header differs from this row type's is refused,
/// so two schemas never mix in one file.
pub fn write_csv<R: Serialize>(sink: &Sink, header: &[&str], rows: &[R]) -> Result<()> {
    match sink {
        Sink::Stdout => {
            let stdout = io::stdout();
            write_rows(stdout.lock(), Some(header), rows)
        }
        Sink::File(path) => {
            let mut file = OpenOptions::new().create(true).read(true).append(true).open(path)?;
            let mut existing = String::new();
            file.seek(SeekFrom::Start(0))?;
            file.read_to_string(&mut existing)?;
            let fresh = existing.is_empty();
            if !fresh {
                let first = existing.lines().next().unwrap_or_default();
                if first != header.join(",") {
                    return Err(HarnessError::Usage(format!(
                        "{} has header '{first}', expected '{}'",
                        path.display(),
                        header.join(",")
                    )));
                }
                if !existing.ends_with('\n') {
                    file.write_all(b"\n")?;
                }
            }
            write_rows(file, fresh.then_some(header), rows)
        }
    }
}

fn write_rows<W: Write, R: Serialize>(w: W, header: Option<&[&str]>, rows: &[R]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    if let Some(h) = header {
        wtr.write_record(h)?;
    }
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub const RESULT_HEADER: [&str; 8] = ["algorithm", "n", "p_n", "source", "comparisons", "constant_c", "seed", "trials"];
