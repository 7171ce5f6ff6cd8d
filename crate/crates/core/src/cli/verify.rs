//! Property suite behind `qchkit verify`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{csv_text, json_text, render_table, Command, Format, JobSpec, Outcome, Status, SCHEMA_VERSION};
use crate::bipoly::BiPoly;
use crate::enumerate::{self, CountQuery, CurveDegree, Cycle};
use crate::grassmann::{self, CIData, LVector};
use crate::qring::QRing;
use crate::scalar::{self, int, ratio, ExactScalar};

type Check = (&'static str, std::result::Result<(), String>);

/// Outcome of one property over all the cases it was checked on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.property == name)
    }

    fn absorb(&mut self, label: &str, checks: Vec<Check>) {
        for (name, result) in checks {
            let idx = match self.properties.iter().position(|p| p.property == name) {
                Some(i) => i,
                None => {
                    self.properties.push(PropertyResult {
                        property: name,
                        cases: 0,
                        failures: Vec::new(),
                    });
                    self.properties.len() - 1
                }
            };
            let entry = &mut self.properties[idx];
            entry.cases += 1;
            if let Err(why) = result {
                entry.failures.push(format!("{label}: {why}"));
            }
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(found: T, expected: T) -> std::result::Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("expected {expected:?}, found {found:?}"))
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn factorial_product(ci: &CIData) -> BigInt {
    ci.degrees().iter().map(|&d| scalar::factorial(d)).product()
}

fn lvector_checks(ci: &CIData, lv: &LVector) -> Vec<Check> {
    let fact = factorial_product(ci);
    // Σ_i Σ_{j=1}^{d_i} (d_i - j)/j
    let harmonic: ExactScalar = ci
        .degrees()
        .iter()
        .flat_map(|&d| (1..=d).map(move |j| ratio(i64::from(d - j), i64::from(j))))
        .sum();
    let top = lv.top();
    vec![
        ("l_vector.l0_closed_form", expect_eq(lv.l[0].clone(), fact.clone())),
        (
            "l_vector.l1_closed_form",
            expect_eq(scalar::from_big(&lv.l[1]), scalar::from_big(&fact) * harmonic),
        ),
        ("l_vector.total", expect_eq(lv.l.iter().sum::<BigInt>(), ci.mu_closed_form())),
        (
            "l_vector.symmetry",
            ensure((0..=top).all(|p| lv.l[p] == lv.l[top - p]), || format!("{:?}", lv.l)),
        ),
        ("l_vector.length", expect_eq(lv.l.len() as i64, i64::from(ci.n()) + 2 - ci.k())),
    ]
}

fn bipoly_checks(ci: &CIData) -> Vec<Check> {
    let g = grassmann::generating_polynomial(ci);
    let scaled = g.scale(&scalar::from_big(&ci.degree()));
    let one = ExactScalar::one();
    vec![
        ("bipoly.generating_symmetric", ensure(g.is_symmetric(), || "not symmetric".into())),
        (
            "bipoly.generating_homogeneous",
            expect_eq(g.homogeneous_degree(), Some(ci.delta())),
        ),
        (
            "bipoly.generating_total",
            expect_eq(scaled.evaluate(&one, &one), scalar::from_big(&(ci.degree() * ci.mu_closed_form()))),
        ),
    ]
}

fn ring_checks(ci: &CIData, lv: &LVector, ring: &QRing) -> Vec<Check> {
    let mut checks = Vec::new();
    let report = ring.verify();
    checks.push((
        "ring.axioms",
        ensure(report.is_clean(), || {
            let first: Vec<String> = report.violations.iter().take(3).map(ToString::to_string).collect();
            format!("{} violations, e.g. {}", report.violations.len(), first.join("; "))
        }),
    ));

    let n = ring.n();
    let k = ring.k();
    let h = ring.h(1);
    let lhs = ring.qmul(&h, &ring.classical_from_quantum_power(n).expect("n <= n"));
    let rhs = ring
        .classical_from_quantum_power(n + 1 - k)
        .expect("n + 1 - k <= n")
        .scale(&scalar::from_big(&lv.mu));
    checks.push(("ring.top_relation", ensure(lhs == rhs, || "H^{n+1} != mu H^{n+1-k}".into())));

    if k < n && ring.primitive_rank() > 0 {
        let hk = ring.h(k);
        let m = ring.primitive_rank();
        let l0 = scalar::from_big(&lv.l[0]);
        let mut ok = true;
        let mut scale_ok = true;
        for i in 0..m {
            for j in 0..m {
                let Ok(t) = ring.triple_product(&hk, &ring.pi(i), &ring.pi(j), 1) else {
                    ok = false;
                    continue;
                };
                let pairing = &ring.pairing()[i][j];
                ok &= t == -(&l0 * pairing);
                // the pairing scale for a codimension-k subvariety of degree 1
                let scale = ring.primitive_pairing_scale(1).expect("dy >= 1");
                scale_ok &= &t / scalar::from_big(&ci.degree()) == scale * pairing;
            }
        }
        checks.push(("ring.hk_primitive_pairing", ensure(ok, || "<H_k, pi_i, pi_j> != -l_0 (pi_i|pi_j)".into())));
        checks.push(("ring.pairing_scale", ensure(scale_ok, || "pairing scale disagrees with the ring".into())));
    }
    checks
}

fn count_checks(ci: &CIData, lv: &LVector, ring: &QRing) -> Vec<Check> {
    let mut checks = Vec::new();
    let n = i64::from(ci.n());
    let k = ci.k();
    let d = ci.degree();
    for curve in CurveDegree::all() {
        if curve == CurveDegree::Conic && ci.is_quadric() {
            continue;
        }
        for codims in enumerate::balanced_triples(ci, curve) {
            let tag = format!("{curve} {codims:?}");
            let q = match CountQuery::with_l_vector(ci, lv.clone(), curve, codims) {
                Ok(q) => q,
                Err(e) => {
                    checks.push(("counts.route_equivalence", Err(format!("{tag}: {e}"))));
                    continue;
                }
            };
            let report = enumerate::evaluate_with_ring(&q, ring);
            checks.push((
                "counts.route_equivalence",
                match &report {
                    Ok(r) => ensure(r.agree(), || {
                        format!("{tag}: formula {} vs ring {}", scalar::format(&r.formula_raw), scalar::format(&r.ring_raw))
                    }),
                    Err(e) => Err(format!("{tag}: {e}")),
                },
            ));
            if let Ok(r) = &report {
                let integral = r.halved || r.count.is_integer();
                checks.push((
                    "counts.nonnegative_integral",
                    ensure(scalar::is_nonnegative(&r.count) && integral, || format!("{tag}: {}", scalar::format(&r.count))),
                ));
            }
            let [p, qq, r] = codims;
            let perms = [[p, r, qq], [qq, p, r], [qq, r, p], [r, p, qq], [r, qq, p]];
            let base = q.closed_form();
            let invariant = perms.iter().all(|perm| {
                CountQuery::with_l_vector(ci, lv.clone(), curve, *perm).is_ok_and(|x| x.closed_form() == base)
            });
            checks.push(("counts.permutation_invariance", ensure(invariant, || tag.clone())));
            if curve == CurveDegree::Line {
                let q = i64::from(qq);
                let lhs = &d * lv.partial_sum(n - q);
                let rhs = &d * (&lv.mu - lv.partial_sum(q - k));
                checks.push(("counts.partial_sum_identity", expect_eq(lhs, rhs)));
            }
        }
    }

    let s = i64::from(ci.s());
    if n == 2 * s - 1 {
        let l0 = scalar::from_big(&lv.l[0]);
        let via_cycles = enumerate::count_through_cycles(ci, CurveDegree::Conic, [Cycle::Point, Cycle::Point, Cycle::Section(1)]);
        checks.push((
            "counts.conics_two_points",
            match (enumerate::conics_through_two_points(ci), via_cycles) {
                (Ok(c), Ok(r)) => {
                    let from_l0 = &l0 * &l0 / (scalar::from_big(&d) * int(2));
                    ensure(c == from_l0 && c == r.count && r.agree(), || {
                        format!("closed form {} vs l_0 {} vs cycles {}", scalar::format(&c), scalar::format(&from_l0), scalar::format(&r.count))
                    })
                }
                (a, b) => Err(format!("{a:?} / {b:?}")),
            },
        ));
    }
    if n == 3 * s - 3 {
        let via_cycles = enumerate::count_through_cycles(ci, CurveDegree::TwistedCubic, [Cycle::Point; 3]);
        checks.push((
            "counts.cubics_three_points",
            match (enumerate::cubics_through_three_points(ci), via_cycles) {
                (Ok(c), Ok(r)) => ensure(c == r.count && r.agree(), || {
                    format!("closed form {} vs cycles {}", scalar::format(&c), scalar::format(&r.count))
                }),
                (a, b) => Err(format!("{a:?} / {b:?}")),
            },
        ));
    }
    checks
}

/// Every per-variety property for one complete intersection. With
/// `inject_fault` one structure constant is corrupted before checking.
pub fn verify_case(ci: &CIData, inject_fault: bool) -> Vec<(&'static str, std::result::Result<(), String>)> {
    let mut checks = Vec::new();
    let a = grassmann::l_vector_from_integrals(ci);
    let b = grassmann::l_vector_from_generating_function(ci);
    let lv = match (a, b) {
        (Ok(a), Ok(b)) => {
            checks.push(("l_vector.two_routes", expect_eq(&a.l, &b.l)));
            b
        }
        (a, b) => {
            checks.push(("l_vector.two_routes", Err(format!("{:?} / {:?}", a.err(), b.err()))));
            return checks;
        }
    };
    checks.extend(lvector_checks(ci, &lv));
    checks.extend(bipoly_checks(ci));
    let mut ring = match enumerate::ring_for_counts(ci, &lv) {
        Ok(r) => r,
        Err(e) => {
            checks.push(("ring.axioms", Err(e.to_string())));
            return checks;
        }
    };
    if inject_fault {
        // H_1 · H_1 picks up an extra H_2
        ring.perturb_entry(1, 1, 2, &ExactScalar::one());
    }
    checks.extend(ring_checks(ci, &lv, &ring));
    checks.extend(count_checks(ci, &lv, &ring));
    checks
}

/// Known values for the cubic threefold.
fn corpus_checks() -> Vec<Check> {
    let ci = CIData::new(3, vec![3]).expect("valid");
    let lv = grassmann::l_vector_from_generating_function(&ci).expect("valid");
    let two_points = enumerate::conics_through_two_points(&ci).map_err(|e| e.to_string());
    let through = |curve, cycles| {
        enumerate::count_through_cycles(&ci, curve, cycles)
            .map(|r| r.count)
            .map_err(|e| e.to_string())
    };
    let scale = QRing::for_complete_intersection(&ci)
        .and_then(|r| r.primitive_pairing_scale(1))
        .map_err(|e| e.to_string());
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    vec![
        ("corpus.cubic_threefold_l_vector", expect_eq(lv.l, big(&[6, 15, 6]))),
        ("corpus.cubic_threefold_mu", expect_eq(lv.mu, BigInt::from(27))),
        ("corpus.conics_through_two_points", expect_eq(two_points, Ok(int(6)))),
        (
            "corpus.conics_point_line_line",
            expect_eq(through(CurveDegree::Conic, [Cycle::Point, Cycle::Line, Cycle::Line]), Ok(int(14))),
        ),
        (
            "corpus.cubics_three_points",
            expect_eq(through(CurveDegree::TwistedCubic, [Cycle::Point; 3]), Ok(int(24))),
        ),
        ("corpus.pairing_scale", expect_eq(scale, Ok(int(-2)))),
    ]
}

/// Grassmannian integration sanity checks.
fn grassmannian_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for ambient in 4..=10u32 {
        let c = grassmann::special_schubert(ambient - 2);
        let v = grassmann::integrate_g2n(&(&c * &c), ambient).map_err(|e| e.to_string());
        checks.push(("grassmannian.point_class", expect_eq(v, Ok(int(1)))));
    }
    let sigma1 = BiPoly::linear(int(1), int(1));
    let four_lines = grassmann::integrate_g2n(&sigma1.pow(4), 4).map_err(|e| e.to_string());
    checks.push(("grassmannian.four_lines", expect_eq(four_lines, Ok(int(2)))));
    checks
}

/// Hypersurface identities for `d = 3..=6`.
fn hypersurface_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for d in 3..=6u32 {
        let df = scalar::from_big(&scalar::factorial(d));
        let dm1 = scalar::from_big(&scalar::factorial(d - 1));
        let conics = CIData::new(2 * d - 3, vec![d]).map_err(|e| e.to_string()).and_then(|ci| {
            enumerate::conics_through_two_points(&ci).map_err(|e| e.to_string())
        });
        let expected = &df * &dm1 / int(2);
        let corollary = &df * &df / int(2 * i64::from(d));
        checks.push((
            "hypersurface.conics_two_points",
            ensure(conics.as_ref() == Ok(&expected) && expected == corollary, || format!("d={d}: {conics:?}")),
        ));
        let cubics = CIData::new(3 * d - 6, vec![d]).map_err(|e| e.to_string()).and_then(|ci| {
            enumerate::cubics_through_three_points(&ci).map_err(|e| e.to_string())
        });
        let expected = &df * &dm1 * &dm1;
        let corollary = scalar::pow(&df, 3) / int(i64::from(d * d));
        checks.push((
            "hypersurface.cubics_three_points",
            ensure(cubics.as_ref() == Ok(&expected) && expected == corollary, || format!("d={d}: {cubics:?}")),
        ));
    }
    checks
}

/// Runs the suite on one variety, or on the whole grid when `ci` is `None`.
pub fn verify_suite(ci: Option<&CIData>, grid: &super::Grid, inject_fault: bool) -> VerifyReport {
    let mut report = VerifyReport::default();
    let cases = match ci {
        Some(ci) => vec![ci.clone()],
        None => grid.cases(),
    };
    let is_cubic = |c: &CIData| c.n() == 3 && c.degrees() == [3];
    if ci.is_none_or(is_cubic) {
        report.absorb("cubic threefold", corpus_checks());
    }
    if ci.is_none() {
        report.absorb("G(2,N)", grassmannian_checks());
        report.absorb("hypersurfaces", hypersurface_checks());
    }
    let results: Vec<_> = cases.par_iter().map(|c| (c.label(), verify_case(c, inject_fault))).collect();
    for (label, checks) in results {
        report.absorb(&label, checks);
    }
    report
}

pub(super) fn run_verify(spec: &JobSpec) -> crate::error::Result<Outcome> {
    let Command::Verify { grid, inject_fault } = &spec.command else {
        unreachable!("dispatched on Command::Verify")
    };
    let report = verify_suite(spec.ci.as_ref(), grid, *inject_fault);
    let status_of = |p: &PropertyResult| if p.passed() { "PASS" } else { "FAIL" };

    let text = match spec.format() {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                passed: bool,
                properties: &'a [PropertyResult],
            }
            json_text(&Out {
                schema_version: SCHEMA_VERSION,
                passed: report.passed(),
                properties: &report.properties,
            })
        }
        Format::Csv => csv_text(
            &["schema_version", "property", "status", "cases", "failures"],
            &report
                .properties
                .iter()
                .map(|p| {
                    vec![
                        SCHEMA_VERSION.to_string(),
                        p.property.to_string(),
                        status_of(p).to_string(),
                        p.cases.to_string(),
                        p.failures.join(";"),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Table => {
            let rows: Vec<Vec<String>> = report
                .properties
                .iter()
                .map(|p| vec![status_of(p).to_string(), p.property.to_string(), p.cases.to_string()])
                .collect();
            let mut t = render_table(&["status", "property", "cases"], &rows);
            for p in &report.properties {
                for f in p.failures.iter().take(5) {
                    t += &format!("FAIL {}: {f}\n", p.property);
                }
                if p.failures.len() > 5 {
                    t += &format!("FAIL {}: … {} more\n", p.property, p.failures.len() - 5);
                }
            }
            t += &format!("overall: {}\n", if report.passed() { "PASS" } else { "FAIL" });
            t
        }
    };
    let mut out = Outcome::with_status(text, if report.passed() { Status::Ok } else { Status::Mismatch });
    if !report.passed() {
        let failed: Vec<&str> = report.properties.iter().filter(|p| !p.passed()).map(|p| p.property).collect();
        out.messages.push(format!("error: failed properties: {}", failed.join(", ")));
    }
    Ok(out)
}
