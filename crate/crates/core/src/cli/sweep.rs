use rayon::prelude::*;
use serde::Serialize;

use super::{csv_text, join, json_text, render_table, Command, Format, JobSpec, Outcome, SCHEMA_VERSION};
use crate::enumerate;
use crate::error::Result;
use crate::grassmann::{self, CIData, LVector};
use crate::scalar::{self, ExactScalar};

/// Parameter grid: every multiset of `1..=max_r` degrees in `2..=max_degree`,
/// each at the minimal valid dimension and two above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub max_r: u32,
    pub max_degree: u32,
}

impl Grid {
    pub const SWEEP_DEFAULT: Grid = Grid { max_r: 2, max_degree: 4 };
    pub const VERIFY_DEFAULT: Grid = Grid { max_r: 3, max_degree: 5 };

    pub fn capped(self, max_degree: Option<u32>) -> Self {
        Grid {
            max_degree: max_degree.map_or(self.max_degree, |c| c.min(self.max_degree)),
            ..self
        }
    }

    /// Cases in a fixed order: by number of degrees, then degrees
    /// lexicographically, then dimension.
    pub fn cases(&self) -> Vec<CIData> {
        let mut out = Vec::new();
        if self.max_degree < 2 {
            return out;
        }
        for r in 1..=self.max_r {
            for degrees in multisets(r, 2, self.max_degree) {
                let n0 = CIData::min_valid_dim(&degrees);
                for n in [n0, n0 + 2] {
                    out.push(CIData::new(n, degrees.clone()).expect("degrees >= 2 and n >= 2"));
                }
            }
        }
        out
    }
}

/// Non-decreasing sequences of length `len` with entries in `lo..=hi`.
fn multisets(len: u32, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in multisets(len - 1, lo, hi) {
        let start = tail.last().copied().unwrap_or(lo);
        for d in start..=hi {
            let mut v = tail.clone();
            v.push(d);
            out.push(v);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub ci: CIData,
    pub lvec: LVector,
    pub conics_two_points: Option<ExactScalar>,
    pub cubics_three_points: Option<ExactScalar>,
}

fn sweep_row(ci: &CIData) -> Result<SweepRow> {
    Ok(SweepRow {
        ci: ci.clone(),
        lvec: grassmann::l_vector_from_generating_function(ci)?,
        conics_two_points: enumerate::conics_through_two_points(ci).ok(),
        cubics_three_points: enumerate::cubics_through_three_points(ci).ok(),
    })
}

/// Rows are computed in parallel and returned in grid order.
pub fn sweep_rows(grid: &Grid) -> Result<Vec<SweepRow>> {
    grid.cases().par_iter().map(sweep_row).collect()
}

#[derive(Serialize)]
struct RowOut<'a> {
    schema_version: u32,
    n: u32,
    degrees: &'a [u32],
    k: i64,
    d: String,
    l_vector: Vec<String>,
    mu: String,
    conics_two_points: Option<String>,
    cubics_three_points: Option<String>,
}

const HEADERS: [&str; 9] = [
    "schema_version",
    "n",
    "degrees",
    "k",
    "d",
    "l_vector",
    "mu",
    "conics_two_points",
    "cubics_three_points",
];

pub(super) fn run_sweep(spec: &JobSpec) -> Result<Outcome> {
    let Command::Sweep { grid } = &spec.command else {
        unreachable!("dispatched on Command::Sweep")
    };
    let rows = sweep_rows(grid)?;
    let opt = |q: &Option<ExactScalar>| q.as_ref().map(scalar::format);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                SCHEMA_VERSION.to_string(),
                r.ci.n().to_string(),
                join(r.ci.degrees(), ";"),
                r.ci.k().to_string(),
                r.ci.degree().to_string(),
                join(&r.lvec.l, ";"),
                r.lvec.mu.to_string(),
                opt(&r.conics_two_points).unwrap_or_default(),
                opt(&r.cubics_three_points).unwrap_or_default(),
            ]
        })
        .collect();

    let text = match spec.format() {
        Format::Csv => csv_text(&HEADERS, &cells)?,
        Format::Table => render_table(&HEADERS[1..], &cells.iter().map(|c| c[1..].to_vec()).collect::<Vec<_>>()),
        Format::Json => json_text(
            &rows
                .iter()
                .map(|r| RowOut {
                    schema_version: SCHEMA_VERSION,
                    n: r.ci.n(),
                    degrees: r.ci.degrees(),
                    k: r.ci.k(),
                    d: r.ci.degree().to_string(),
                    l_vector: r.lvec.l.iter().map(ToString::to_string).collect(),
                    mu: r.lvec.mu.to_string(),
                    conics_two_points: opt(&r.conics_two_points),
                    cubics_three_points: opt(&r.cubics_three_points),
                })
                .collect::<Vec<_>>(),
        ),
    };
    let mut out = Outcome::ok(text);
    if rows.is_empty() {
        out.messages.push(format!(
            "warning: the grid (max r {}, max degree {}) contains no valid complete intersection",
            grid.max_r, grid.max_degree
        ));
    }
    Ok(out)
}
