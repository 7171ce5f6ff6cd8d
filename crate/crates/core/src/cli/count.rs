use serde::Serialize;

use super::{csv_text, join, json_text, render_table, Command, CountTarget, Format, JobSpec, Outcome, Status, SCHEMA_VERSION};
use crate::enumerate::{self, CountQuery, CountReport, EXPECTED_DIMENSION_CAVEAT};
use crate::error::Result;
use crate::grassmann::CIData;
use crate::scalar;

#[derive(Serialize)]
struct RouteOut {
    raw: String,
    count: String,
}

#[derive(Serialize)]
struct CountOut<'a> {
    schema_version: u32,
    ci: &'a CIData,
    curve: String,
    codims: [u32; 3],
    cycles: Option<Vec<String>>,
    formula: RouteOut,
    ring: RouteOut,
    halved: bool,
    agree: bool,
    count: String,
    caveat: &'static str,
}

pub(super) fn run_count(spec: &JobSpec) -> Result<Outcome> {
    let ci = spec.require_ci()?;
    let Command::Count { curve, target } = &spec.command else {
        unreachable!("dispatched on Command::Count")
    };
    let (report, cycles): (CountReport, Option<Vec<String>>) = match target {
        CountTarget::Codims(c) => (enumerate::evaluate(&CountQuery::new(ci, *curve, *c)?)?, None),
        CountTarget::Cycles(cy) => (
            enumerate::count_through_cycles(ci, *curve, *cy)?,
            Some(cy.iter().map(ToString::to_string).collect()),
        ),
    };
    let agree = report.agree();
    let f = scalar::format;

    let text = match spec.format() {
        Format::Json => json_text(&CountOut {
            schema_version: SCHEMA_VERSION,
            ci,
            curve: curve.to_string(),
            codims: report.codims,
            cycles,
            formula: RouteOut {
                raw: f(&report.formula_raw),
                count: f(&report.count),
            },
            ring: RouteOut {
                raw: f(&report.ring_raw),
                count: f(&report.ring_count),
            },
            halved: report.halved,
            agree,
            count: f(&report.count),
            caveat: EXPECTED_DIMENSION_CAVEAT,
        }),
        Format::Csv => csv_text(
            &[
                "schema_version",
                "n",
                "degrees",
                "curve",
                "codims",
                "cycles",
                "formula_raw",
                "ring_raw",
                "halved",
                "count",
                "ring_count",
                "agree",
            ],
            &[vec![
                SCHEMA_VERSION.to_string(),
                ci.n().to_string(),
                join(ci.degrees(), ";"),
                curve.to_string(),
                join(&report.codims, ";"),
                cycles.map(|c| c.join(";")).unwrap_or_default(),
                f(&report.formula_raw),
                f(&report.ring_raw),
                report.halved.to_string(),
                f(&report.count),
                f(&report.ring_count),
                agree.to_string(),
            ]],
        )?,
        Format::Table => {
            let mut t = format!("X: {}  {} meeting codims ({})", ci.label(), curve, join(&report.codims, ","));
            if let Some(c) = &cycles {
                t += &format!(" from cycles {}", c.join(","));
            }
            t.push('\n');
            t += &render_table(
                &["route", "triple_product", "count"],
                &[
                    vec!["formula".into(), f(&report.formula_raw), f(&report.count)],
                    vec!["ring".into(), f(&report.ring_raw), f(&report.ring_count)],
                ],
            );
            t += &format!("halved: {}\nagree: {agree}\ncount: {}\nnote: {EXPECTED_DIMENSION_CAVEAT}\n", report.halved, f(&report.count));
            t
        }
    };
    let mut out = Outcome::with_status(text, if agree { Status::Ok } else { Status::Mismatch });
    if !agree {
        out.messages.push("error: closed form and ring triple product disagree".into());
    }
    Ok(out)
}
