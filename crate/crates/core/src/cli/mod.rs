//! Command-line front end: job description, dispatch, output formats and
//! the verification harness.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 a cross-route
//! mismatch or internal inconsistency.

mod args;
mod count;
mod lvector;
mod ring;
mod sweep;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::enumerate::{CurveDegree, Cycle};
use crate::error::{Error, Result};
use crate::grassmann::CIData;
use crate::scalar::ExactScalar;

pub use args::{main_with, Cli};
pub use ring::{dump_ring, parse_ring_dump};
pub use sweep::{sweep_rows, Grid, SweepRow};
pub use verify::{verify_case, verify_suite, PropertyResult, VerifyReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Io,
    Validation,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Io => 1,
            Status::Validation => 2,
            Status::Mismatch => 3,
        }
    }

    fn of_error(e: &Error) -> Self {
        if e.is_validation() {
            Status::Validation
        } else {
            Status::Mismatch
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountTarget {
    Codims([u32; 3]),
    Cycles([Cycle; 3]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Lvector,
    Ring {
        primitive_rank: Option<usize>,
        pairing: Option<Vec<Vec<ExactScalar>>>,
    },
    Count {
        curve: CurveDegree,
        target: CountTarget,
    },
    Verify {
        grid: Grid,
        inject_fault: bool,
    },
    Sweep {
        grid: Grid,
    },
}

/// One fully validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub ci: Option<CIData>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command, ci: Option<CIData>) -> Self {
        Self {
            command,
            ci,
            format: None,
            out: None,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = Some(format);
        self
    }

    /// The ring dump is JSON and the sweep CSV unless asked otherwise.
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Ring { .. } => Format::Json,
            Command::Sweep { .. } => Format::Csv,
            _ => Format::Table,
        })
    }

    fn require_ci(&self) -> Result<&CIData> {
        self.ci
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--dim and --degrees are required".into()))
    }
}

/// Rendered output of a job. `messages` go to standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
    pub messages: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            status: Status::Ok,
            messages: Vec::new(),
        }
    }

    fn with_status(text: String, status: Status) -> Self {
        Self {
            text,
            status,
            messages: Vec::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Self {
            text: String::new(),
            status: Status::of_error(e),
            messages: vec![format!("error: {e}")],
        }
    }
}

/// Runs a job and renders its output; never panics on bad input.
pub fn run(spec: &JobSpec) -> Outcome {
    let result = match &spec.command {
        Command::Lvector => lvector::run_lvector(spec),
        Command::Ring { .. } => ring::run_ring(spec),
        Command::Count { .. } => count::run_count(spec),
        Command::Verify { .. } => verify::run_verify(spec),
        Command::Sweep { .. } => sweep::run_sweep(spec),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

/// Runs a job, writes its output to `--out` or standard output, and
/// returns the process exit code.
pub fn execute(spec: &JobSpec) -> i32 {
    let outcome = run(spec);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    let written = match &spec.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.text.as_bytes()).and_then(|_| stdout.flush())
        }
    };
    match written {
        Ok(()) => outcome.status.exit_code(),
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            Status::Io.exit_code()
        }
    }
}

/// Left-aligned plain-text table.
fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, cell) in cells.enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = widths[i].saturating_sub(cell.chars().count());
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', pad));
        }
        let _ = writeln!(out, "{}", s.trim_end());
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn csv_text(headers: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(headers).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
