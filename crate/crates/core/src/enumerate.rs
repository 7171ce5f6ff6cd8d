//! Counts of lines, conics and twisted cubics meeting three general
//! linear sections, in closed form over the ℓ-vector and cross-checked
//! against triple products in the quantum ring.
//!
//! With `p ≤ q ≤ r` the codimensions and `S(j) = ℓ_0 + … + ℓ_j` (zero for
//! `j < 0`, `μ` past the last index):
//!
//! ```text
//! lines          d · (S(n-q) - S(r-k))                     p+q+r = n+k
//! conics         d · (S(n-q)S(n-r) - S(p-k)(S(n-r) - S(q-k)))   p+q+r = n+2k
//! twisted cubics d · S(n-p) S(n-q) S(n-r)                  p+q+r = n+3k
//! ```
//!
//! The correction terms `S(r-k)` and `S(p-k)` vanish when `r < k`
//! (resp. `p < k`), leaving the familiar products of partial sums.
//! Every curve class here is assumed to move in a family of the expected
//! dimension; that is a genericity statement about `X` that cannot be
//! checked algebraically.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::grassmann::{self, CIData, LVector};
use crate::qring::{default_primitive_model, QRing, RingElement};
use crate::scalar::{self, ExactScalar};

pub const EXPECTED_DIMENSION_CAVEAT: &str =
    "assumes the curves of this degree on X form a family of the expected dimension";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveDegree {
    Line = 1,
    Conic = 2,
    TwistedCubic = 3,
}

impl CurveDegree {
    pub fn value(self) -> u32 {
        self as u32
    }

    pub fn all() -> [CurveDegree; 3] {
        [CurveDegree::Line, CurveDegree::Conic, CurveDegree::TwistedCubic]
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveDegree::Line => "lines",
            CurveDegree::Conic => "conics",
            CurveDegree::TwistedCubic => "cubics",
        }
    }
}

impl fmt::Display for CurveDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveDegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "line" | "lines" => Ok(CurveDegree::Line),
            "2" | "conic" | "conics" => Ok(CurveDegree::Conic),
            "3" | "cubic" | "cubics" | "twisted-cubics" => Ok(CurveDegree::TwistedCubic),
            other => Err(Error::Parse(format!("unknown curve degree {other:?}"))),
        }
    }
}

/// Curves of one degree meeting three general linear sections of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountQuery {
    ci: CIData,
    lvec: LVector,
    curve: CurveDegree,
    codims: [u32; 3],
}

impl CountQuery {
    pub fn new(ci: &CIData, curve: CurveDegree, codims: [u32; 3]) -> Result<Self> {
        let lvec = grassmann::l_vector_from_generating_function(ci)?;
        Self::with_l_vector(ci, lvec, curve, codims)
    }

    /// Like [`CountQuery::new`] with a precomputed ℓ-vector.
    pub fn with_l_vector(ci: &CIData, lvec: LVector, curve: CurveDegree, mut codims: [u32; 3]) -> Result<Self> {
        ci.require_hypothesis()?;
        let n = ci.n();
        if let Some(&c) = codims.iter().find(|&&c| c == 0 || c > n) {
            return Err(Error::CodimOutOfRange { codim: c.into(), n });
        }
        let expected = i64::from(n) + i64::from(curve.value()) * ci.k();
        let found: i64 = codims.iter().map(|&c| i64::from(c)).sum();
        if found != expected {
            return Err(Error::Unbalanced { expected, found });
        }
        if curve == CurveDegree::Conic && ci.is_quadric() {
            return Err(Error::QuadricConics);
        }
        codims.sort_unstable();
        Ok(Self {
            ci: ci.clone(),
            lvec,
            curve,
            codims,
        })
    }

    pub fn ci(&self) -> &CIData {
        &self.ci
    }

    pub fn curve(&self) -> CurveDegree {
        self.curve
    }

    /// Codimensions in increasing order.
    pub fn codims(&self) -> [u32; 3] {
        self.codims
    }

    pub fn lvec(&self) -> &LVector {
        &self.lvec
    }

    /// A hyperplane meets every conic twice.
    pub fn halving_applies(&self) -> bool {
        self.curve == CurveDegree::Conic && self.codims[0] == 1
    }

    /// `S(j)`
    fn sum(&self, j: i64) -> BigInt {
        self.lvec.partial_sum(j)
    }

    /// Triple-product value from the closed forms, before any halving.
    pub fn closed_form(&self) -> BigInt {
        let n = i64::from(self.ci.n());
        let k = self.ci.k();
        let [p, q, r] = self.codims.map(i64::from);
        let d = self.ci.degree();
        match self.curve {
            CurveDegree::Line => d * (self.sum(n - q) - self.sum(r - k)),
            CurveDegree::Conic => {
                let (bq, br) = (self.sum(n - q), self.sum(n - r));
                let (ap, aq) = (self.sum(p - k), self.sum(q - k));
                d * (&bq * &br - ap * (br - aq))
            }
            CurveDegree::TwistedCubic => d * self.sum(n - p) * self.sum(n - q) * self.sum(n - r),
        }
    }

    /// `⟨H_p, H_q, H_r⟩_j` computed in the ring.
    pub fn ring_triple_product(&self, ring: &QRing) -> Result<ExactScalar> {
        let [p, q, r] = self.codims;
        ring.triple_product(&ring.h(p), &ring.h(q), &ring.h(r), self.curve.value())
    }

    fn enumerative(&self, raw: ExactScalar) -> ExactScalar {
        if self.halving_applies() {
            raw / scalar::int(2)
        } else {
            raw
        }
    }

    fn expect_curve(&self, curve: CurveDegree) -> Result<()> {
        if self.curve == curve {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "query is for {}, not {}",
                self.curve, curve
            )))
        }
    }
}

/// Lines meeting three general linear sections of codimensions `p ≤ q ≤ r`
/// (each counted with its intersection multiplicity).
pub fn count_lines(q: &CountQuery) -> Result<BigInt> {
    q.expect_curve(CurveDegree::Line)?;
    Ok(q.closed_form())
}

/// Conics meeting three general linear sections. When one section is a
/// hyperplane the triple product counts each conic twice and is halved.
pub fn count_conics(q: &CountQuery) -> Result<ExactScalar> {
    q.expect_curve(CurveDegree::Conic)?;
    Ok(q.enumerative(scalar::from_big(&q.closed_form())))
}

pub fn count_twisted_cubics(q: &CountQuery) -> Result<BigInt> {
    q.expect_curve(CurveDegree::TwistedCubic)?;
    Ok(q.closed_form())
}

/// `(1/2d) ∏ (d_i!)²`, valid when `n = 2Σ(d_i-1) - 1`.
pub fn conics_through_two_points(ci: &CIData) -> Result<ExactScalar> {
    let expected = 2 * i64::from(ci.s()) - 1;
    if i64::from(ci.n()) != expected {
        return Err(Error::DimensionMismatch { expected, found: ci.n() });
    }
    let fact: BigInt = ci.degrees().iter().map(|&d| scalar::factorial(d)).product();
    Ok(ExactScalar::new(&fact * &fact, BigInt::from(2) * ci.degree()))
}

/// `(1/d²) ∏ (d_i!)³`, valid when `n = 3Σ(d_i-1) - 3`.
pub fn cubics_through_three_points(ci: &CIData) -> Result<ExactScalar> {
    let expected = 3 * i64::from(ci.s()) - 3;
    if i64::from(ci.n()) != expected {
        return Err(Error::DimensionMismatch { expected, found: ci.n() });
    }
    let fact: BigInt = ci.degrees().iter().map(|&d| scalar::factorial(d)).product();
    let d = ci.degree();
    Ok(ExactScalar::new(fact.pow(3), &d * &d))
}

/// An incidence condition imposed on curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cycle {
    Point,
    /// A line contained in `X`.
    Line,
    /// A general linear section of the given codimension.
    Section(u32),
}

impl Cycle {
    fn codim(self, n: u32) -> u32 {
        match self {
            Cycle::Point => n,
            Cycle::Line => n - 1,
            Cycle::Section(c) => c,
        }
    }

    /// Multiple of `H_codim` representing the cycle: a point is `H_n / d`,
    /// a line in `X` is `H_{n-1} / d`.
    fn class_factor(self, degree: &BigInt) -> ExactScalar {
        match self {
            Cycle::Point | Cycle::Line => ExactScalar::new(BigInt::one(), degree.clone()),
            Cycle::Section(_) => ExactScalar::one(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cycle::Point => f.write_str("point"),
            Cycle::Line => f.write_str("line"),
            Cycle::Section(1) => f.write_str("hyperplane"),
            Cycle::Section(c) => write!(f, "section:{c}"),
        }
    }
}

impl FromStr for Cycle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "point" | "pt" => Ok(Cycle::Point),
            "line" => Ok(Cycle::Line),
            "hyperplane" => Ok(Cycle::Section(1)),
            _ => s
                .strip_prefix("section:")
                .and_then(|c| c.parse().ok())
                .map(Cycle::Section)
                .ok_or_else(|| Error::Parse(format!("unknown cycle {s:?}"))),
        }
    }
}

/// Result of a count computed by both routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub curve: CurveDegree,
    pub codims: [u32; 3],
    /// Closed-form triple product.
    pub formula_raw: ExactScalar,
    /// Triple product in the quantum ring.
    pub ring_raw: ExactScalar,
    pub halved: bool,
    /// Enumerative answer from the closed form (after halving and class factors).
    pub count: ExactScalar,
    /// Same answer from the ring route.
    pub ring_count: ExactScalar,
}

impl CountReport {
    pub fn agree(&self) -> bool {
        self.formula_raw == self.ring_raw && self.count == self.ring_count
    }
}

/// Ring used for the cross-check. Odd quadrics have no middle cohomology,
/// so only their hyperplane subalgebra is built.
pub fn ring_for_counts(ci: &CIData, lvec: &LVector) -> Result<QRing> {
    let k = u32::try_from(ci.k()).map_err(|_| Error::HypothesisFails {
        n: ci.n(),
        bound: 2 * i64::from(ci.s()) - 1,
    })?;
    if ci.is_odd_quadric() {
        QRing::from_l_vector(ci.n(), k, ci.degree(), lvec.l.clone(), 0, Vec::new())
    } else {
        let (m, pairing) = default_primitive_model(ci.n());
        QRing::build(ci, lvec.clone(), m, pairing)
    }
}

/// Evaluates a query by both routes against a prebuilt ring.
pub fn evaluate_with_ring(q: &CountQuery, ring: &QRing) -> Result<CountReport> {
    let formula_raw = scalar::from_big(&q.closed_form());
    let ring_raw = q.ring_triple_product(ring)?;
    Ok(CountReport {
        curve: q.curve,
        codims: q.codims,
        count: q.enumerative(formula_raw.clone()),
        ring_count: q.enumerative(ring_raw.clone()),
        halved: q.halving_applies(),
        formula_raw,
        ring_raw,
    })
}

pub fn evaluate(q: &CountQuery) -> Result<CountReport> {
    let ring = ring_for_counts(&q.ci, &q.lvec)?;
    evaluate_with_ring(q, &ring)
}

/// Curves of degree `curve` meeting three cycles, each converted to a
/// rational multiple of a hyperplane-power class.
pub fn count_through_cycles(ci: &CIData, curve: CurveDegree, cycles: [Cycle; 3]) -> Result<CountReport> {
    let n = ci.n();
    if n < 3 && cycles.contains(&Cycle::Line) {
        return Err(Error::LineCycleNeedsDim3);
    }
    let codims = cycles.map(|c| c.codim(n));
    let q = CountQuery::new(ci, curve, codims)?;
    let ring = ring_for_counts(ci, &q.lvec)?;

    let degree = ci.degree();
    let factor: ExactScalar = cycles
        .iter()
        .map(|c| c.class_factor(&degree))
        .fold(ExactScalar::one(), |acc, f| acc * f);
    let classes: Vec<RingElement> = cycles
        .iter()
        .zip(codims)
        .map(|(c, codim)| ring.h(codim).scale(&c.class_factor(&degree)))
        .collect();
    let ring_scaled = ring.triple_product(&classes[0], &classes[1], &classes[2], curve.value())?;

    let formula_raw = scalar::from_big(&q.closed_form());
    let ring_raw = q.ring_triple_product(&ring)?;
    Ok(CountReport {
        curve,
        codims: q.codims,
        count: q.enumerative(&formula_raw * &factor),
        ring_count: q.enumerative(ring_scaled),
        halved: q.halving_applies(),
        formula_raw,
        ring_raw,
    })
}

/// Every sorted balanced codimension triple for `curve` on `ci`.
pub fn balanced_triples(ci: &CIData, curve: CurveDegree) -> Vec<[u32; 3]> {
    let n = ci.n();
    let total = i64::from(n) + i64::from(curve.value()) * ci.k();
    let mut out = Vec::new();
    for p in 1..=n {
        for q in p..=n {
            let r = total - i64::from(p) - i64::from(q);
            if r >= i64::from(q) && r <= i64::from(n) {
                out.push([p, q, r as u32]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn cubic() -> CIData {
        CIData::new(3, vec![3]).unwrap()
    }

    fn ci22() -> CIData {
        CIData::new(3, vec![2, 2]).unwrap()
    }

    fn query(ci: &CIData, curve: CurveDegree, codims: [u32; 3]) -> CountQuery {
        CountQuery::new(ci, curve, codims).unwrap()
    }

    #[test]
    fn line_counts() {
        // ⟨H, H_2, H_2⟩_1 = d·ℓ_1: 5 lines meet two general lines of X, 5·9 = 45
        assert_eq!(count_lines(&query(&cubic(), CurveDegree::Line, [1, 2, 2])).unwrap(), BigInt::from(45));
        // lines through three points of a line section: 3·ℓ_0
        assert_eq!(count_lines(&query(&cubic(), CurveDegree::Line, [1, 1, 3])).unwrap(), BigInt::from(18));
        assert_eq!(count_lines(&query(&ci22(), CurveDegree::Line, [1, 2, 2])).unwrap(), BigInt::from(32));
    }

    #[test]
    fn conic_counts() {
        assert_eq!(count_conics(&query(&cubic(), CurveDegree::Conic, [2, 2, 3])).unwrap(), int(378));
        let q = query(&cubic(), CurveDegree::Conic, [1, 3, 3]);
        assert!(q.halving_applies());
        assert_eq!(q.closed_form(), BigInt::from(108));
        assert_eq!(count_conics(&q).unwrap(), int(54));
        let quadric = CIData::new(4, vec![2]).unwrap();
        assert_eq!(
            CountQuery::new(&quadric, CurveDegree::Conic, [4, 4, 4]),
            Err(Error::QuadricConics)
        );
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(
            count_twisted_cubics(&query(&cubic(), CurveDegree::TwistedCubic, [3, 3, 3])).unwrap(),
            BigInt::from(648)
        );
        assert_eq!(
            count_twisted_cubics(&query(&ci22(), CurveDegree::TwistedCubic, [3, 3, 3])).unwrap(),
            BigInt::from(256)
        );
        assert_eq!(
            CountQuery::new(&cubic(), CurveDegree::TwistedCubic, [4, 3, 2]),
            Err(Error::CodimOutOfRange { codim: 4, n: 3 })
        );
    }

    #[test]
    fn wrong_curve_for_operation() {
        let q = query(&cubic(), CurveDegree::Line, [1, 2, 2]);
        assert!(count_conics(&q).is_err());
        assert!(count_twisted_cubics(&q).is_err());
    }

    #[test]
    fn balance_is_checked() {
        assert_eq!(
            CountQuery::new(&cubic(), CurveDegree::Line, [1, 2, 3]),
            Err(Error::Unbalanced { expected: 5, found: 6 })
        );
    }

    #[test]
    fn two_and_three_point_counts() {
        assert_eq!(conics_through_two_points(&cubic()).unwrap(), int(6));
        assert_eq!(conics_through_two_points(&ci22()).unwrap(), int(2));
        assert_eq!(cubics_through_three_points(&cubic()).unwrap(), int(24));
        assert_eq!(cubics_through_three_points(&ci22()).unwrap(), int(4));
        assert_eq!(
            conics_through_two_points(&CIData::new(5, vec![3]).unwrap()),
            Err(Error::DimensionMismatch { expected: 3, found: 5 })
        );
        assert!(cubics_through_three_points(&CIData::new(4, vec![3]).unwrap()).is_err());
    }

    #[test]
    fn two_points_via_l0() {
        // ℓ_0² / 2d
        for ci in [cubic(), ci22(), CIData::new(5, vec![4]).unwrap()] {
            let lv = grassmann::l_vector_from_generating_function(&ci).unwrap();
            let l0 = scalar::from_big(&lv.l[0]);
            let expected = &l0 * &l0 / (scalar::from_big(&ci.degree()) * int(2));
            assert_eq!(conics_through_two_points(&ci).unwrap(), expected);
        }
    }

    #[test]
    fn cycle_counts() {
        let r = count_through_cycles(&cubic(), CurveDegree::Conic, [Cycle::Point, Cycle::Line, Cycle::Line]).unwrap();
        assert_eq!(r.count, int(14));
        assert!(r.agree());
        let r = count_through_cycles(&cubic(), CurveDegree::TwistedCubic, [Cycle::Point; 3]).unwrap();
        assert_eq!(r.count, int(24));
        assert!(r.agree());
        let r = count_through_cycles(
            &cubic(),
            CurveDegree::Conic,
            [Cycle::Point, Cycle::Point, Cycle::Section(1)],
        )
        .unwrap();
        assert!(r.halved);
        assert_eq!(r.count, int(6));
        assert!(r.agree());
        assert_eq!(
            count_through_cycles(&CIData::new(2, vec![2]).unwrap(), CurveDegree::Line, [Cycle::Line, Cycle::Point, Cycle::Section(1)]),
            Err(Error::LineCycleNeedsDim3)
        );
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!("point".parse::<Cycle>().unwrap(), Cycle::Point);
        assert_eq!("Line".parse::<Cycle>().unwrap(), Cycle::Line);
        assert_eq!("hyperplane".parse::<Cycle>().unwrap(), Cycle::Section(1));
        assert_eq!("section:2".parse::<Cycle>().unwrap(), Cycle::Section(2));
        assert!("plane".parse::<Cycle>().is_err());
        assert_eq!("conics".parse::<CurveDegree>().unwrap(), CurveDegree::Conic);
    }

    #[test]
    fn routes_agree_on_small_cases() {
        for (n, ds) in [(3, vec![3]), (4, vec![3]), (5, vec![4]), (7, vec![2, 3]), (6, vec![2])] {
            let ci = CIData::new(n, ds).unwrap();
            for curve in CurveDegree::all() {
                if curve == CurveDegree::Conic && ci.is_quadric() {
                    continue;
                }
                for codims in balanced_triples(&ci, curve) {
                    let r = evaluate(&query(&ci, curve, codims)).unwrap();
                    assert!(r.agree(), "{} {curve} {codims:?}: {r:?}", ci.label());
                }
            }
        }
    }

    #[test]
    fn odd_quadric_lines_use_hyperplane_ring() {
        let ci = CIData::new(3, vec![2]).unwrap();
        for codims in balanced_triples(&ci, CurveDegree::Line) {
            assert!(evaluate(&query(&ci, CurveDegree::Line, codims)).unwrap().agree());
        }
    }

    #[test]
    fn hyperplane_conics_are_always_one_n_n() {
        for (n, ds) in [(3, vec![3]), (5, vec![2, 2, 2]), (7, vec![5]), (9, vec![2, 3])] {
            let ci = CIData::new(n, ds).unwrap();
            for [p, q, r] in balanced_triples(&ci, CurveDegree::Conic) {
                if p == 1 {
                    assert_eq!((q, r), (n, n));
                }
            }
        }
        assert!(!query(&cubic(), CurveDegree::Conic, [2, 2, 3]).halving_applies());
    }
}
