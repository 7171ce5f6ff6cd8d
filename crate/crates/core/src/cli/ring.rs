use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{csv_text, join, json_text, Command, Format, JobSpec, Outcome, Status, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::grassmann::{CIData, LVector};
use crate::qring::{default_primitive_model, QRing, RingElement};
use crate::scalar::{self, ExactScalar};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub(super) struct RingDump {
    schema_version: u32,
    ci: Option<CIData>,
    relations: Relations,
    primitive_rank: usize,
    pairing: Vec<Vec<String>>,
    basis: Vec<BasisEntry>,
    table: Vec<TableEntry>,
    report: Report,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Relations {
    n: u32,
    k: u32,
    d: String,
    mu: String,
    l: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct BasisEntry {
    name: String,
    degree: u32,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct TableEntry {
    a: String,
    b: String,
    c: String,
    value: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Report {
    violations: Vec<String>,
}

fn fmt_matrix(m: &[Vec<ExactScalar>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(scalar::format).collect()).collect()
}

fn names(ring: &QRing) -> Vec<String> {
    ring.basis().iter().map(ToString::to_string).collect()
}

/// JSON dump of the structure constants and the verification report.
pub fn dump_ring(ring: &QRing) -> String {
    let names = names(ring);
    let dump = RingDump {
        schema_version: super::SCHEMA_VERSION,
        ci: ring.ci().cloned(),
        relations: Relations {
            n: ring.n(),
            k: ring.k(),
            d: ring.degree().to_string(),
            mu: ring.mu().to_string(),
            l: ring.lvec().l.iter().map(ToString::to_string).collect(),
        },
        primitive_rank: ring.primitive_rank(),
        pairing: fmt_matrix(ring.pairing()),
        basis: (0..ring.dim())
            .map(|i| BasisEntry {
                name: names[i].clone(),
                degree: ring.basis_degree(i),
            })
            .collect(),
        table: ring
            .table_entries()
            .map(|(a, b, c, v)| TableEntry {
                a: names[a].clone(),
                b: names[b].clone(),
                c: names[c].clone(),
                value: scalar::format(v),
            })
            .collect(),
        report: Report {
            violations: ring.verify().violations.iter().map(ToString::to_string).collect(),
        },
    };
    json_text(&dump)
}

/// Rebuilds a ring from [`dump_ring`] output without re-deriving anything;
/// run [`QRing::verify`] on the result to re-check it.
pub fn parse_ring_dump(text: &str) -> Result<QRing> {
    let dump: RingDump = serde_json::from_str(text).map_err(|e| Error::Parse(format!("ring dump: {e}")))?;
    if dump.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema_version {}",
            dump.schema_version
        )));
    }
    let big = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")));
    let rel = &dump.relations;
    let l = rel.l.iter().map(|s| big(s)).collect::<Result<Vec<_>>>()?;
    let lvec = LVector { l, mu: big(&rel.mu)? };
    let pairing = dump
        .pairing
        .iter()
        .map(|row| row.iter().map(|s| scalar::parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if pairing.len() != dump.primitive_rank {
        return Err(Error::PairingShape { expected: dump.primitive_rank });
    }

    let expected: Vec<String> = (0..=rel.n)
        .map(|p| format!("H_{p}"))
        .chain((1..=dump.primitive_rank).map(|i| format!("pi_{i}")))
        .collect();
    let listed: Vec<&str> = dump.basis.iter().map(|b| b.name.as_str()).collect();
    if listed != expected {
        return Err(Error::Parse("basis does not match n and primitive_rank".into()));
    }
    let index: HashMap<&str, usize> = listed.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown basis element {s:?}")))
    };
    let entries = dump
        .table
        .iter()
        .map(|e| Ok((lookup(&e.a)?, lookup(&e.b)?, lookup(&e.c)?, scalar::parse(&e.value)?)))
        .collect::<Result<Vec<_>>>()?;
    QRing::from_table(dump.ci, rel.n, rel.k, big(&rel.d)?, lvec, pairing, entries)
}

/// Primitive model from the command-line options: an explicit pairing, a
/// rank with the standard pairing, or the default model.
fn primitive_model(
    n: u32,
    rank: Option<usize>,
    pairing: Option<&Vec<Vec<ExactScalar>>>,
) -> Result<(usize, Vec<Vec<ExactScalar>>)> {
    match (rank, pairing) {
        (None, None) => Ok(default_primitive_model(n)),
        (rank, Some(p)) => {
            if rank.is_some_and(|m| m != p.len()) {
                return Err(Error::PairingShape { expected: rank.unwrap() });
            }
            Ok((p.len(), p.clone()))
        }
        (Some(m), None) => {
            let mut p = vec![vec![ExactScalar::from_integer(BigInt::from(0)); m]; m];
            if n.is_multiple_of(2) {
                for (i, row) in p.iter_mut().enumerate() {
                    row[i] = ExactScalar::one();
                }
            } else {
                if m % 2 == 1 {
                    return Err(Error::InvalidArgument(format!(
                        "odd n needs an even primitive rank for the standard pairing, got {m}"
                    )));
                }
                for i in (0..m).step_by(2) {
                    p[i][i + 1] = ExactScalar::one();
                    p[i + 1][i] = -ExactScalar::one();
                }
            }
            Ok((m, p))
        }
    }
}

fn render_element(ring: &QRing, x: &RingElement) -> String {
    let basis = ring.basis();
    let mut out = String::new();
    for (i, c) in x.coords().iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c)) {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&scalar::format(&abs));
            out.push('*');
        }
        out.push_str(&basis[i].to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(super) fn run_ring(spec: &JobSpec) -> Result<Outcome> {
    let ci = spec.require_ci()?;
    let Command::Ring { primitive_rank, pairing } = &spec.command else {
        unreachable!("dispatched on Command::Ring")
    };
    let (m, pairing) = primitive_model(ci.n(), *primitive_rank, pairing.as_ref())?;
    let lvec = crate::grassmann::l_vector_from_generating_function(ci)?;
    let ring = QRing::build(ci, lvec, m, pairing)?;
    let report = ring.verify();

    let text = match spec.format() {
        Format::Json => dump_ring(&ring),
        Format::Csv => {
            let names = names(&ring);
            let v = SCHEMA_VERSION.to_string();
            let rows: Vec<Vec<String>> = ring
                .table_entries()
                .map(|(a, b, c, x)| {
                    vec![v.clone(), names[a].clone(), names[b].clone(), names[c].clone(), scalar::format(x)]
                })
                .collect();
            csv_text(&["schema_version", "a", "b", "c", "value"], &rows)?
        }
        Format::Table => {
            let mut t = format!(
                "X: {}  k={} d={} mu={} l=({})\nprimitive rank {}, pairing [{}]\n",
                ci.label(),
                ring.k(),
                ring.degree(),
                ring.mu(),
                join(&ring.lvec().l, ","),
                ring.primitive_rank(),
                fmt_matrix(ring.pairing())
                    .iter()
                    .map(|r| r.join(","))
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            let basis = ring.basis();
            for a in 1..ring.dim() {
                for b in a..ring.dim() {
                    let prod = ring.basis_product(a, b);
                    t += &format!("{} * {} = {}\n", basis[a], basis[b], render_element(&ring, prod));
                }
            }
            if report.is_clean() {
                t += "violations: none\n";
            } else {
                for v in &report.violations {
                    t += &format!("violation: {v}\n");
                }
            }
            t
        }
    };
    let status = if report.is_clean() { Status::Ok } else { Status::Mismatch };
    Ok(Outcome::with_status(text, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trips() {
        let ci = CIData::new(3, vec![3]).unwrap();
        let ring = QRing::for_complete_intersection(&ci).unwrap();
        let text = dump_ring(&ring);
        let back = parse_ring_dump(&text).unwrap();
        assert_eq!(back, ring);
        assert!(back.verify().is_clean());
        assert_eq!(dump_ring(&back), text);
    }

    #[test]
    fn tampered_dump_fails_verification() {
        let ci = CIData::new(4, vec![3]).unwrap();
        let ring = QRing::for_complete_intersection(&ci).unwrap();
        let text = dump_ring(&ring).replacen("\"value\": \"1\"", "\"value\": \"2\"", 3);
        let back = parse_ring_dump(&text).unwrap();
        assert!(!back.verify().is_clean());
    }

    #[test]
    fn malformed_dumps() {
        assert!(matches!(parse_ring_dump("{"), Err(Error::Parse(_))));
        let ci = CIData::new(3, vec![3]).unwrap();
        let text = dump_ring(&QRing::for_complete_intersection(&ci).unwrap());
        let bad = text.replace("\"name\": \"pi_1\"", "\"name\": \"pi_9\"");
        assert!(parse_ring_dump(&bad).is_err());
        let bad = text.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(parse_ring_dump(&bad).is_err());
    }

    #[test]
    fn primitive_models() {
        assert_eq!(primitive_model(4, Some(2), None).unwrap().1[1][1], ExactScalar::one());
        assert_eq!(primitive_model(5, Some(2), None).unwrap().1[1][0], -ExactScalar::one());
        assert!(primitive_model(5, Some(3), None).is_err());
        assert_eq!(primitive_model(5, Some(0), None).unwrap().0, 0);
    }

    #[test]
    fn element_rendering() {
        let ring = QRing::for_complete_intersection(&CIData::new(3, vec![3]).unwrap()).unwrap();
        assert_eq!(render_element(&ring, ring.basis_product(1, 2)), "15*H_1 + H_3");
        assert_eq!(render_element(&ring, ring.basis_product(2, 5)), "-6*pi_2");
        assert_eq!(render_element(&ring, &RingElement::zero(ring.dim())), "0");
    }
}
