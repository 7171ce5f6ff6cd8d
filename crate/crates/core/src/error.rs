use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::Inconsistency`] is a caller error (bad input or a
/// violated precondition). `Inconsistency` means two independent computations
/// disagreed or a proven identity failed, which points at a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension n = {0} is too small: n >= 2 is required")]
    DimensionTooSmall(u32),
    #[error("at least one defining degree is required")]
    NoDegrees,
    #[error("degree {0} is not allowed: every defining degree must be >= 2 (drop linear factors)")]
    DegreeTooSmall(u32),
    #[error("n >= 2Σ(d_i-1)-1 fails: n = {n}, 2Σ(d_i-1)-1 = {bound}")]
    HypothesisFails { n: u32, bound: i64 },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("polynomial is not symmetric in the two Chern roots")]
    NotSymmetric,
    #[error("integrand has wrong degree: expected homogeneous of degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: String },
    #[error("Grassmannian G(2,{0}) requires N >= 3")]
    AmbientTooSmall(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("odd-dimensional quadric rejected: condition (iii) requires that H^n(X,Q) is nonzero")]
    OddQuadric,
    #[error("condition (iii) fails: n = 2k-1 requires H^n(X,Q) is nonzero (primitive rank >= 1)")]
    MissingMiddleCohomology,
    #[error("quadric rings support primitive rank <= 1, got {0}")]
    QuadricPrimitiveRank(usize),
    #[error("pairing must be {expected}x{expected}")]
    PairingShape { expected: usize },
    #[error("pairing is degenerate")]
    PairingDegenerate,
    #[error("pairing must be {0} for n of this parity")]
    PairingSymmetry(&'static str),
    #[error("ℓ-vector is not symmetric: ℓ_{p} != ℓ_{q}")]
    AsymmetricLineCounts { p: usize, q: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("unbalanced query: codimensions sum to {found}, expected n + j·k = {expected}")]
    Unbalanced { expected: i64, found: i64 },
    #[error("codimension {codim} out of range 1..={n}")]
    CodimOutOfRange { codim: i64, n: u32 },
    #[error("conic counts are not defined for quadrics (k < n required)")]
    QuadricConics,
    #[error("dimension mismatch: this count requires n = {expected}, got n = {found}")]
    DimensionMismatch { expected: i64, found: u32 },
    #[error("line cycles need n >= 3 (rank-one cohomology in degree 2n-2)")]
    LineCycleNeedsDim3,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True when the error reflects bad input rather than a failed internal check.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
