use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{execute, Command, CountTarget, Format, Grid, JobSpec};
use crate::enumerate::{CurveDegree, Cycle};
use crate::error::{Error, Result};
use crate::grassmann::CIData;
use crate::scalar::{self, ExactScalar};

pub const MAX_DEGREE_ENV: &str = "QCHKIT_MAX_DEGREE";

#[derive(Debug, Parser)]
#[command(
    name = "qchkit",
    version,
    about = "Exact quantum cohomology and curve counts on Fano complete intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Line numbers ℓ_p and μ(X), computed two independent ways
    Lvector {
        #[command(flatten)]
        ci: CiArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Structure constants of the quantum ring and their verification
    Ring {
        #[command(flatten)]
        ci: CiArgs,
        /// Rank of the primitive middle cohomology model
        #[arg(long)]
        primitive_rank: Option<usize>,
        /// Pairing matrix of the primitive classes, rows separated by ';' (e.g. "0,1;-1,0")
        #[arg(long, allow_hyphen_values = true)]
        pairing: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Curves meeting three general linear sections or cycles
    Count {
        #[arg(value_enum)]
        curve: CurveArg,
        #[command(flatten)]
        ci: CiArgs,
        /// Codimensions p,q,r of three general linear sections
        #[arg(long, value_delimiter = ',')]
        codims: Vec<u32>,
        /// Three cycles: point, line, hyperplane or section:<c>
        #[arg(long, value_delimiter = ',', conflicts_with = "codims")]
        cycles: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the property suite on one variety, or on the default grid
    Verify {
        #[command(flatten)]
        ci: CiArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// ℓ-vectors and point counts over a grid of degrees
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CurveArg {
    Lines,
    Conics,
    Cubics,
}

impl From<CurveArg> for CurveDegree {
    fn from(c: CurveArg) -> Self {
        match c {
            CurveArg::Lines => CurveDegree::Line,
            CurveArg::Conics => CurveDegree::Conic,
            CurveArg::Cubics => CurveDegree::TwistedCubic,
        }
    }
}

#[derive(Debug, Args)]
struct CiArgs {
    /// Dimension n of X
    #[arg(long)]
    dim: Option<u32>,
    /// Degrees of the defining equations, comma separated
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

impl CiArgs {
    fn parse(&self) -> Result<Option<CIData>> {
        match (self.dim, self.degrees.is_empty()) {
            (None, true) => Ok(None),
            (Some(n), false) => CIData::checked(n, self.degrees.clone()).map(Some),
            _ => Err(Error::InvalidArgument("--dim and --degrees must be given together".into())),
        }
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Largest number of defining equations
    #[arg(long)]
    max_r: Option<u32>,
    /// Largest degree of a defining equation
    #[arg(long)]
    max_degree: Option<u32>,
}

impl GridArgs {
    fn grid(&self, default: Grid) -> Result<Grid> {
        let cap = match std::env::var(MAX_DEGREE_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("{MAX_DEGREE_ENV}={v:?} is not an integer")))?,
            ),
            Err(_) => None,
        };
        let grid = Grid {
            max_r: self.max_r.unwrap_or(default.max_r),
            max_degree: self.max_degree.unwrap_or(default.max_degree),
        };
        Ok(grid.capped(cap))
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pairing(s: &str) -> Result<Vec<Vec<ExactScalar>>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|row| row.split(',').map(scalar::parse).collect())
        .collect()
}

fn triple<T: Copy>(v: &[T], what: &str) -> Result<[T; 3]> {
    <[T; 3]>::try_from(v).map_err(|_| Error::InvalidArgument(format!("{what} needs exactly three entries, got {}", v.len())))
}

impl Cli {
    /// Validates the arguments into a job.
    pub fn into_job(self) -> Result<JobSpec> {
        let (command, ci, output) = match self.command {
            CliCommand::Lvector { ci, output } => (Command::Lvector, ci, output),
            CliCommand::Ring {
                ci,
                primitive_rank,
                pairing,
                output,
            } => (
                Command::Ring {
                    primitive_rank,
                    pairing: pairing.as_deref().map(parse_pairing).transpose()?,
                },
                ci,
                output,
            ),
            CliCommand::Count {
                curve,
                ci,
                codims,
                cycles,
                output,
            } => {
                let target = if !cycles.is_empty() {
                    let parsed = cycles.iter().map(|c| c.parse::<Cycle>()).collect::<Result<Vec<_>>>()?;
                    CountTarget::Cycles(triple(&parsed, "--cycles")?)
                } else if !codims.is_empty() {
                    CountTarget::Codims(triple(&codims, "--codims")?)
                } else {
                    return Err(Error::InvalidArgument("give --codims or --cycles".into()));
                };
                (Command::Count { curve: curve.into(), target }, ci, output)
            }
            CliCommand::Verify {
                ci,
                grid,
                inject_fault,
                output,
            } => (
                Command::Verify {
                    grid: grid.grid(Grid::VERIFY_DEFAULT)?,
                    inject_fault,
                },
                ci,
                output,
            ),
            CliCommand::Sweep { grid, output } => (
                Command::Sweep {
                    grid: grid.grid(Grid::SWEEP_DEFAULT)?,
                },
                CiArgs {
                    dim: None,
                    degrees: Vec::new(),
                },
                output,
            ),
        };
        Ok(JobSpec {
            command,
            ci: ci.parse()?,
            format: output.format,
            out: output.out,
        })
    }
}

/// Entry point for the binary; returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    match cli.into_job() {
        Ok(job) => execute(&job),
        Err(e) => {
            eprintln!("error: {e}");
            super::Status::of_error(&e).exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Result<JobSpec> {
        let mut full = vec!["qchkit"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).expect("parses").into_job()
    }

    #[test]
    fn parses_commands() {
        let j = job(&["count", "conics", "--dim", "3", "--degrees", "3", "--cycles", "point,line,line"]).unwrap();
        assert_eq!(
            j.command,
            Command::Count {
                curve: CurveDegree::Conic,
                target: CountTarget::Cycles([Cycle::Point, Cycle::Line, Cycle::Line])
            }
        );
        assert_eq!(j.format(), Format::Table);
        let j = job(&["ring", "--dim", "3", "--degrees", "3", "--pairing", "0,1;-1,0"]).unwrap();
        assert_eq!(j.format(), Format::Json);
        let j = job(&["sweep", "--max-r", "1"]).unwrap();
        assert_eq!(j.format(), Format::Csv);
        assert!(j.ci.is_none());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(job(&["lvector", "--dim", "2", "--degrees", "7"]), Err(Error::HypothesisFails { .. })));
        assert!(job(&["lvector", "--dim", "3"]).is_err());
        assert!(job(&["count", "lines", "--dim", "3", "--degrees", "3", "--codims", "1,2"]).is_err());
        assert!(job(&["count", "lines", "--dim", "3", "--degrees", "3"]).is_err());
        assert!(job(&["ring", "--dim", "3", "--degrees", "3", "--pairing", "0,x"]).is_err());
    }

    #[test]
    fn pairing_text() {
        let p = parse_pairing("0,1;-1,0").unwrap();
        assert_eq!(p[1][0], scalar::int(-1));
        assert!(parse_pairing("").unwrap().is_empty());
    }
}
