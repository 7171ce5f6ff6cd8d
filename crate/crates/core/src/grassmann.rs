//! Chern calculus on the Grassmannian `G(2, N)` of lines in `P^{N-1}`.
//!
//! Classes are symmetric polynomials in the Chern roots `α, β` of the dual
//! tautological subbundle. Integration over `G(2, N)` reads off one
//! coefficient after multiplying by `-½(α-β)²`.
//!
//! The line counts `ℓ_p` of a complete intersection are computed two ways:
//! by integrating the class of the variety of lines against two special
//! Schubert cycles ([`l_vector_from_integrals`]), and by reading
//! coefficients of the product of top Chern classes directly
//! ([`l_vector_from_generating_function`]).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// A complete intersection of degrees `d_1 ≤ … ≤ d_r` and dimension `n`
/// in `P^{n+r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCi")]
pub struct CIData {
    n: u32,
    degrees: Vec<u32>,
}

#[derive(Deserialize)]
struct RawCi {
    n: u32,
    degrees: Vec<u32>,
}

impl TryFrom<RawCi> for CIData {
    type Error = Error;
    fn try_from(raw: RawCi) -> Result<Self> {
        CIData::new(raw.n, raw.degrees)
    }
}

impl CIData {
    /// Validates `n ≥ 2`, `r ≥ 1` and every `d_i ≥ 2`; degrees are sorted.
    ///
    /// The dimension hypothesis `n ≥ 2Σ(d_i-1)-1` is *not* checked here, see
    /// [`CIData::satisfies_hypothesis`].
    pub fn new(n: u32, mut degrees: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if degrees.is_empty() {
            return Err(Error::NoDegrees);
        }
        if let Some(&bad) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::DegreeTooSmall(bad));
        }
        degrees.sort_unstable();
        Ok(Self { n, degrees })
    }

    /// Like [`CIData::new`], additionally requiring the dimension hypothesis.
    pub fn checked(n: u32, degrees: Vec<u32>) -> Result<Self> {
        let ci = Self::new(n, degrees)?;
        ci.require_hypothesis()?;
        Ok(ci)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn r(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// `d = ∏ d_i`
    pub fn degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `s = Σ (d_i - 1)`
    pub fn s(&self) -> u32 {
        self.degrees.iter().map(|&d| d - 1).sum()
    }

    /// Fano index `k = n + 1 - s`. May be non-positive for inputs that
    /// fail the hypothesis.
    pub fn k(&self) -> i64 {
        i64::from(self.n) + 1 - i64::from(self.s())
    }

    /// `δ = Σ (d_i + 1)`, the degree of the class of the variety of lines.
    pub fn delta(&self) -> u32 {
        self.degrees.iter().map(|&d| d + 1).sum()
    }

    /// `N = n + r + 1 = dim V`.
    pub fn ambient_dim(&self) -> u32 {
        self.n + self.r() + 1
    }

    /// `n ≥ 2s - 1`, equivalently `2k > n`.
    pub fn satisfies_hypothesis(&self) -> bool {
        i64::from(self.n) >= 2 * i64::from(self.s()) - 1
    }

    pub fn require_hypothesis(&self) -> Result<()> {
        if self.satisfies_hypothesis() {
            Ok(())
        } else {
            Err(Error::HypothesisFails {
                n: self.n,
                bound: 2 * i64::from(self.s()) - 1,
            })
        }
    }

    pub fn is_quadric(&self) -> bool {
        self.s() == 1
    }

    pub fn is_odd_quadric(&self) -> bool {
        self.is_quadric() && self.n % 2 == 1
    }

    /// `μ(X) = ∏ d_i^{d_i}`
    pub fn mu_closed_form(&self) -> BigInt {
        self.degrees
            .iter()
            .map(|&d| BigInt::from(d).pow(d))
            .product()
    }

    /// Smallest `n ≥ 2` satisfying the hypothesis for these degrees.
    pub fn min_valid_dim(degrees: &[u32]) -> u32 {
        let s: u32 = degrees.iter().map(|&d| d.saturating_sub(1)).sum();
        (2 * s).saturating_sub(1).max(2)
    }

    pub fn label(&self) -> String {
        let ds: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        format!("n={} d=({})", self.n, ds.join(","))
    }
}

/// The line counts `ℓ_0, …, ℓ_{n+1-k}` and `μ(X) = Σ ℓ_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LVector {
    pub l: Vec<BigInt>,
    pub mu: BigInt,
}

impl LVector {
    /// `ℓ_p`, zero outside `0..=n+1-k`.
    pub fn ell(&self, p: i64) -> BigInt {
        usize::try_from(p)
            .ok()
            .and_then(|p| self.l.get(p).cloned())
            .unwrap_or_else(BigInt::zero)
    }

    /// `Σ_{i=0}^{j} ℓ_i`: zero for `j < 0`, `μ` once `j` passes the last index.
    pub fn partial_sum(&self, j: i64) -> BigInt {
        if j < 0 {
            return BigInt::zero();
        }
        let upto = (j as usize + 1).min(self.l.len());
        self.l[..upto].iter().sum()
    }

    /// Index of the last entry, `n + 1 - k = s`.
    pub fn top(&self) -> usize {
        self.l.len() - 1
    }

    /// Validates an exact candidate vector: integrality, non-negativity,
    /// `ℓ_p = ℓ_{top-p}`, and `Σ ℓ_p = ∏ d_i^{d_i}`.
    fn from_exact(ci: &CIData, values: Vec<ExactScalar>) -> Result<Self> {
        let mut l = Vec::with_capacity(values.len());
        for (p, v) in values.iter().enumerate() {
            let Some(int) = scalar::to_integer(v) else {
                return Err(Error::Inconsistency(format!(
                    "ℓ_{p} = {} is not an integer for {}",
                    scalar::format(v),
                    ci.label()
                )));
            };
            if int.is_negative() {
                return Err(Error::Inconsistency(format!(
                    "ℓ_{p} = {int} is negative for {}",
                    ci.label()
                )));
            }
            l.push(int);
        }
        let top = l.len() - 1;
        for p in 0..=top {
            if l[p] != l[top - p] {
                return Err(Error::Inconsistency(format!(
                    "ℓ_{p} = {} differs from ℓ_{} = {} for {}",
                    l[p],
                    top - p,
                    l[top - p],
                    ci.label()
                )));
            }
        }
        let mu: BigInt = l.iter().sum();
        let closed = ci.mu_closed_form();
        let evaluated = generating_polynomial(ci).evaluate(&ExactScalar::one(), &ExactScalar::one());
        if mu != closed || scalar::from_big(&mu) != evaluated {
            return Err(Error::Inconsistency(format!(
                "μ mismatch for {}: Σℓ_p = {mu}, ∏d_i^d_i = {closed}, evaluation = {}",
                ci.label(),
                scalar::format(&evaluated)
            )));
        }
        Ok(Self { l, mu })
    }
}

/// Special Schubert cycle `c_p = (α^{p+1} - β^{p+1}) / (α - β) = Σ_{i=0}^{p} α^i β^{p-i}`.
pub fn special_schubert(p: u32) -> BiPoly {
    BiPoly::from_terms((0..=p).map(|i| ((i, p - i), ExactScalar::one())))
}

/// `c_q` with the convention `c_q = 0` for `q < 0`.
fn schubert_or_zero(q: i64) -> BiPoly {
    u32::try_from(q).map(special_schubert).unwrap_or_default()
}

/// Top Chern class `c_{d+1}(Sym^d S*) = ∏_{j=0}^{d} (jα + (d-j)β)`.
pub fn sym_power_top_chern(d: u32) -> Result<BiPoly> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "symmetric power degree must be >= 1".into(),
        ));
    }
    Ok((0..=d)
        .map(|j| BiPoly::linear(scalar::int(j.into()), scalar::int((d - j).into())))
        .product())
}

/// `∫_{G(2,N)} P`: the coefficient of `α^{N-1} β^{N-1}` in `-½(α-β)² P`.
///
/// `P` must be symmetric and homogeneous of degree `2(N-2)`; the zero
/// polynomial integrates to zero.
pub fn integrate_g2n(poly: &BiPoly, ambient_dim: u32) -> Result<ExactScalar> {
    if ambient_dim < 3 {
        return Err(Error::AmbientTooSmall(ambient_dim));
    }
    if !poly.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if poly.is_zero() {
        return Ok(ExactScalar::zero());
    }
    let expected = 2 * (ambient_dim - 2);
    if poly.homogeneous_degree() != Some(expected) {
        let found = match poly.homogeneous_degree() {
            Some(d) => d.to_string(),
            None => "an inhomogeneous polynomial".to_string(),
        };
        return Err(Error::WrongDegree { expected, found });
    }
    let diff = BiPoly::alpha() - BiPoly::beta();
    let weight = (&diff * &diff).scale(&scalar::ratio(-1, 2));
    let top = ambient_dim - 1;
    Ok((&weight * poly).coefficient(top, top))
}

/// Class of the variety of lines on `X`: `∏_i c_{d_i+1}(Sym^{d_i} S*)`.
pub fn lines_class(ci: &CIData) -> BiPoly {
    ci.degrees()
        .iter()
        .map(|&d| sym_power_top_chern(d).expect("degrees are >= 2"))
        .product()
}

/// Right-hand side of the generating identity: `(1/d) ∏_i ∏_j (jα + (d_i-j)β)`.
pub fn generating_polynomial(ci: &CIData) -> BiPoly {
    let inv_d = ExactScalar::new(BigInt::one(), ci.degree());
    lines_class(ci).scale(&inv_d)
}

/// Integrand `F · c_{n-1-p} · c_{k-2+p}` whose integral is `d·ℓ_p`.
pub fn line_integrand(ci: &CIData, p: i64) -> BiPoly {
    let n = i64::from(ci.n());
    let k = ci.k();
    &(&lines_class(ci) * &schubert_or_zero(n - 1 - p)) * &schubert_or_zero(k - 2 + p)
}

/// `ℓ_p = (1/d) ∫_G F · c_{n-1-p} · c_{k-2+p}`.
pub fn line_count(ci: &CIData, p: i64) -> Result<ExactScalar> {
    ci.require_hypothesis()?;
    let max = i64::from(ci.n()) + 1 - ci.k();
    if !(0..=max).contains(&p) {
        return Err(Error::IndexOutOfRange { index: p, max });
    }
    let integral = integrate_g2n(&line_integrand(ci, p), ci.ambient_dim())?;
    Ok(integral / scalar::from_big(&ci.degree()))
}

/// ℓ-vector assembled from one Grassmannian integral per index.
pub fn l_vector_from_integrals(ci: &CIData) -> Result<LVector> {
    ci.require_hypothesis()?;
    let top = i64::from(ci.s());
    let values = (0..=top)
        .map(|p| line_count(ci, p))
        .collect::<Result<Vec<_>>>()?;
    LVector::from_exact(ci, values)
}

/// ℓ-vector read off the generating polynomial: `ℓ_p` is the coefficient of
/// `α^{r+p} β^{δ-r-p}`.
pub fn l_vector_from_generating_function(ci: &CIData) -> Result<LVector> {
    ci.require_hypothesis()?;
    let poly = generating_polynomial(ci);
    let (r, delta, top) = (ci.r(), ci.delta(), ci.s());
    let values: Vec<ExactScalar> = (0..=top)
        .map(|p| poly.coefficient(r + p, delta - r - p))
        .collect();
    let accounted = values.iter().filter(|v| !v.is_zero()).count();
    if accounted != poly.len() {
        return Err(Error::Inconsistency(format!(
            "generating polynomial of {} has terms outside the ℓ range",
            ci.label()
        )));
    }
    LVector::from_exact(ci, values)
}
