use serde::Serialize;

use super::{csv_text, join, json_text, render_table, Format, JobSpec, Outcome, Status, SCHEMA_VERSION};
use crate::error::Result;
use crate::grassmann::{self, CIData};

#[derive(Serialize)]
struct LVectorOut<'a> {
    schema_version: u32,
    ci: &'a CIData,
    integrals: Vec<String>,
    generating_function: Vec<String>,
    mu: String,
    agree: bool,
}

pub(super) fn run_lvector(spec: &JobSpec) -> Result<Outcome> {
    let ci = spec.require_ci()?;
    let a = grassmann::l_vector_from_integrals(ci)?;
    let b = grassmann::l_vector_from_generating_function(ci)?;
    let agree = a == b;

    let text = match spec.format() {
        Format::Json => json_text(&LVectorOut {
            schema_version: SCHEMA_VERSION,
            ci,
            integrals: a.l.iter().map(ToString::to_string).collect(),
            generating_function: b.l.iter().map(ToString::to_string).collect(),
            mu: a.mu.to_string(),
            agree,
        }),
        Format::Csv => {
            let v = SCHEMA_VERSION.to_string();
            let mut rows: Vec<Vec<String>> = (0..a.l.len())
                .map(|p| vec![v.clone(), p.to_string(), a.l[p].to_string(), b.l[p].to_string()])
                .collect();
            rows.push(vec![v, "mu".into(), a.mu.to_string(), b.mu.to_string()]);
            csv_text(&["schema_version", "p", "integrals", "generating_function"], &rows)?
        }
        Format::Table => {
            let mut rows: Vec<Vec<String>> = (0..a.l.len())
                .map(|p| vec![p.to_string(), a.l[p].to_string(), b.l[p].to_string()])
                .collect();
            rows.push(vec!["mu".into(), a.mu.to_string(), b.mu.to_string()]);
            let mut t = format!("X: {}  k={}  l=({})\n", ci.label(), ci.k(), join(&a.l, ","));
            t += &render_table(&["p", "integrals", "generating_function"], &rows);
            t += &format!("agree: {agree}\n");
            t
        }
    };
    let status = if agree { Status::Ok } else { Status::Mismatch };
    let mut out = Outcome::with_status(text, status);
    if !agree {
        out.messages.push("error: the two ℓ-vector routes disagree".into());
    }
    Ok(out)
}
