//! The quantum cohomology ring as an explicit graded algebra.
//!
//! The basis is `H_0, …, H_n` (classical powers of the hyperplane class)
//! followed by `π_1, …, π_m`, formal primitive middle classes carrying a
//! chosen intersection pairing. Degrees are real cohomological degrees:
//! `H_p` sits in degree `2p`, every `π_i` in degree `n`.
//!
//! The product is determined by three relations:
//!
//! ```text
//! H^{n+1} = μ H^{n+1-k}      H·π = 0      π_i·π_j = (π_i|π_j)(1/d)(H^n - μ H^{n-k})
//! ```
//!
//! where `H^j` denotes the *quantum* power, related to the classical basis by
//! `H^j = H_j + (ℓ_0 + … + ℓ_{j-k}) H_{j-k}` for `k ≤ j ≤ n`. The full
//! structure-constant table is materialised at construction and checked
//! (associativity, graded commutativity, Frobenius and cyclic pairing
//! symmetry, grading) before the ring is handed out.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{self, CIData, LVector};
use crate::scalar::{self, ExactScalar};

/// A basis vector of the ring. `Pi` is zero-based; it prints as `pi_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    H(u32),
    Pi(usize),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::H(p) => write!(f, "H_{p}"),
            BasisElement::Pi(i) => write!(f, "pi_{}", i + 1),
        }
    }
}

/// Coordinates over the ring basis `[H_0..H_n, π_1..π_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    coords: Vec<ExactScalar>,
}

impl RingElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![ExactScalar::zero(); dim],
        }
    }

    pub fn from_coords(coords: Vec<ExactScalar>) -> Self {
        Self { coords }
    }

    fn unit_vector(dim: usize, idx: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[idx] = ExactScalar::one();
        v
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn coefficient(&self, idx: usize) -> &ExactScalar {
        &self.coords[idx]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    fn add_scaled(&mut self, other: &RingElement, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        for (x, y) in self.coords.iter_mut().zip(&other.coords) {
            if !y.is_zero() {
                *x += y * c;
            }
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl std::ops::Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &ExactScalar::one());
        out
    }
}

impl std::ops::Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-ExactScalar::one());
        out
    }
}

/// `coefficient · H^exponent` with `exponent ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPower {
    pub coefficient: BigInt,
    pub exponent: u32,
}

/// Default primitive model: a hyperbolic plane for odd `n`, a rank-one
/// lattice `(1)` for even `n`.
pub fn default_primitive_model(n: u32) -> (usize, Vec<Vec<ExactScalar>>) {
    if n % 2 == 1 {
        (
            2,
            vec![
                vec![scalar::int(0), scalar::int(1)],
                vec![scalar::int(-1), scalar::int(0)],
            ],
        )
    } else {
        (1, vec![vec![scalar::int(1)]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Unit,
    Grading,
    GradedCommutativity,
    Associativity,
    Frobenius,
    CyclicPairing,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Unit => "unit",
            Check::Grading => "grading",
            Check::GradedCommutativity => "graded_commutativity",
            Check::Associativity => "associativity",
            Check::Frobenius => "frobenius",
            Check::CyclicPairing => "cyclic_pairing",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub basis: Vec<BasisElement>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{} fails on ({})", self.check, names.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingReport {
    pub violations: Vec<Violation>,
}

impl RingReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRing {
    ci: Option<CIData>,
    n: u32,
    k: u32,
    degree: BigInt,
    lvec: LVector,
    pairing: Vec<Vec<ExactScalar>>,
    table: Vec<Vec<RingElement>>,
}

impl QRing {
    /// Builds the ring of a complete intersection from its ℓ-vector and a
    /// primitive model of rank `m` with the given pairing matrix.
    pub fn build(
        ci: &CIData,
        lvec: LVector,
        m: usize,
        pairing: Vec<Vec<ExactScalar>>,
    ) -> Result<Self> {
        ci.require_hypothesis()?;
        if ci.is_odd_quadric() {
            return Err(Error::OddQuadric);
        }
        if lvec.l.len() != ci.s() as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "ℓ-vector has length {}, expected {}",
                lvec.l.len(),
                ci.s() + 1
            )));
        }
        let k = u32::try_from(ci.k()).expect("hypothesis implies k >= 2");
        let mut ring = Self::assemble(ci.n(), k, ci.degree(), lvec, m, pairing)?;
        ring.ci = Some(ci.clone());
        Ok(ring)
    }

    /// Ring with the ℓ-vector computed from `ci` and the default primitive model.
    pub fn for_complete_intersection(ci: &CIData) -> Result<Self> {
        let lvec = grassmann::l_vector_from_generating_function(ci)?;
        let (m, pairing) = default_primitive_model(ci.n());
        Self::build(ci, lvec, m, pairing)
    }

    /// Abstract Fano ring from `(n, k, d)` and a raw ℓ-vector of length
    /// `n + 2 - k`, not tied to any complete intersection.
    pub fn from_l_vector(
        n: u32,
        k: u32,
        degree: BigInt,
        l: Vec<BigInt>,
        m: usize,
        pairing: Vec<Vec<ExactScalar>>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if k == 0 || k > n || 2 * k <= n {
            return Err(Error::InvalidArgument(format!(
                "index k = {k} must satisfy n/2 < k <= n for n = {n}"
            )));
        }
        if !degree.is_positive() {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if l.len() != (n + 2 - k) as usize {
            return Err(Error::InvalidArgument(format!(
                "ℓ-vector has length {}, expected n + 2 - k = {}",
                l.len(),
                n + 2 - k
            )));
        }
        if l.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument("ℓ-vector entries must be >= 0".into()));
        }
        let top = l.len() - 1;
        if let Some(p) = (0..=top).find(|&p| l[p] != l[top - p]) {
            return Err(Error::AsymmetricLineCounts { p, q: top - p });
        }
        let mu = l.iter().sum();
        Self::assemble(n, k, degree, LVector { l, mu }, m, pairing)
    }

    fn assemble(
        n: u32,
        k: u32,
        degree: BigInt,
        lvec: LVector,
        m: usize,
        pairing: Vec<Vec<ExactScalar>>,
    ) -> Result<Self> {
        if n == 2 * k - 1 && m == 0 {
            return Err(Error::MissingMiddleCohomology);
        }
        if k == n && m > 1 {
            return Err(Error::QuadricPrimitiveRank(m));
        }
        validate_pairing(n, m, &pairing)?;
        let mut ring = Self {
            ci: None,
            n,
            k,
            degree,
            lvec,
            pairing,
            table: Vec::new(),
        };
        ring.table = ring.compute_table();
        let report = ring.verify();
        if let Some(v) = report.violations.first() {
            return Err(Error::Inconsistency(format!(
                "{} ({} violations)",
                v,
                report.violations.len()
            )));
        }
        Ok(ring)
    }

    /// Rebuilds a ring from an explicit structure-constant table (e.g. a
    /// parsed dump). Nothing is verified; call [`QRing::verify`].
    pub fn from_table(
        ci: Option<CIData>,
        n: u32,
        k: u32,
        degree: BigInt,
        lvec: LVector,
        pairing: Vec<Vec<ExactScalar>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, ExactScalar)>,
    ) -> Result<Self> {
        validate_pairing(n, pairing.len(), &pairing)?;
        let dim = n as usize + 1 + pairing.len();
        let mut table = vec![vec![RingElement::zero(dim); dim]; dim];
        for (a, b, c, v) in entries {
            if a >= dim || b >= dim || c >= dim {
                return Err(Error::Parse(format!("table index ({a},{b},{c}) out of range")));
            }
            table[a][b].coords[c] = v;
        }
        Ok(Self {
            ci,
            n,
            k,
            degree,
            lvec,
            pairing,
            table,
        })
    }

    pub fn ci(&self) -> Option<&CIData> {
        self.ci.as_ref()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn lvec(&self) -> &LVector {
        &self.lvec
    }

    pub fn mu(&self) -> &BigInt {
        &self.lvec.mu
    }

    pub fn primitive_rank(&self) -> usize {
        self.pairing.len()
    }

    pub fn pairing(&self) -> &[Vec<ExactScalar>] {
        &self.pairing
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1 + self.pairing.len()
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        (0..=self.n)
            .map(BasisElement::H)
            .chain((0..self.pairing.len()).map(BasisElement::Pi))
            .collect()
    }

    pub fn index_of(&self, b: BasisElement) -> usize {
        match b {
            BasisElement::H(p) => {
                assert!(p <= self.n, "H_{p} out of range");
                p as usize
            }
            BasisElement::Pi(i) => {
                assert!(i < self.pairing.len(), "pi_{} out of range", i + 1);
                self.n as usize + 1 + i
            }
        }
    }

    fn element_at(&self, idx: usize) -> BasisElement {
        if idx <= self.n as usize {
            BasisElement::H(idx as u32)
        } else {
            BasisElement::Pi(idx - self.n as usize - 1)
        }
    }

    /// Real cohomological degree of a basis vector.
    pub fn basis_degree(&self, idx: usize) -> u32 {
        match self.element_at(idx) {
            BasisElement::H(p) => 2 * p,
            BasisElement::Pi(_) => self.n,
        }
    }

    pub fn element(&self, b: BasisElement) -> RingElement {
        RingElement::unit_vector(self.dim(), self.index_of(b))
    }

    pub fn h(&self, p: u32) -> RingElement {
        self.element(BasisElement::H(p))
    }

    pub fn pi(&self, i: usize) -> RingElement {
        self.element(BasisElement::Pi(i))
    }

    /// `Σ_{i=0}^{j} ℓ_i` as a scalar.
    fn cumulative(&self, j: i64) -> ExactScalar {
        scalar::from_big(&self.lvec.partial_sum(j))
    }

    /// The quantum power `H^j` (`j ≤ n`) in the classical basis.
    pub fn classical_from_quantum_power(&self, j: u32) -> Result<RingElement> {
        if j > self.n {
            return Err(Error::IndexOutOfRange {
                index: j.into(),
                max: self.n.into(),
            });
        }
        let mut v = self.h(j);
        if j >= self.k {
            v.coords[(j - self.k) as usize] = self.cumulative(i64::from(j - self.k));
        }
        Ok(v)
    }

    /// Quantum-power coordinates of the classical class `H_a`:
    /// `H_a = H^a - (ℓ_0 + … + ℓ_{a-k}) H^{a-k}`.
    fn quantum_from_classical(&self, a: u32) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); self.n as usize + 1];
        v[a as usize] = ExactScalar::one();
        if a >= self.k {
            v[(a - self.k) as usize] = -self.cumulative(i64::from(a - self.k));
        }
        v
    }

    /// Rewrites `H^j` as `μ^t H^{j - tk}` with `j - tk ≤ n`.
    pub fn reduce_power(&self, j: u32) -> ReducedPower {
        let mut coefficient = BigInt::one();
        let mut exponent = j;
        while exponent > self.n {
            exponent -= self.k;
            coefficient *= &self.lvec.mu;
        }
        ReducedPower {
            coefficient,
            exponent,
        }
    }

    fn power_in_classical(&self, j: u32) -> RingElement {
        let reduced = self.reduce_power(j);
        self.classical_from_quantum_power(reduced.exponent)
            .expect("reduced exponent is <= n")
            .scale(&scalar::from_big(&reduced.coefficient))
    }

    fn compute_table(&self) -> Vec<Vec<RingElement>> {
        let n = self.n;
        let dim = self.dim();
        let m = self.pairing.len();
        let mut table = vec![vec![RingElement::zero(dim); dim]; dim];

        let quantum: Vec<Vec<ExactScalar>> = (0..=n).map(|a| self.quantum_from_classical(a)).collect();
        for a in 0..=n {
            for b in a..=n {
                let mut prod = RingElement::zero(dim);
                for (e1, c1) in quantum[a as usize].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (e2, c2) in quantum[b as usize].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let power = self.power_in_classical((e1 + e2) as u32);
                        prod.add_scaled(&power, &(c1 * c2));
                    }
                }
                table[b as usize][a as usize] = prod.clone();
                table[a as usize][b as usize] = prod;
            }
        }

        // H·π = 0, so H_a·π only sees the H^0 coordinate of H_a.
        for a in 0..=n {
            let c = &quantum[a as usize][0];
            for i in 0..m {
                let pi = self.pi(i).scale(c);
                let idx = self.index_of(BasisElement::Pi(i));
                table[a as usize][idx] = pi.clone();
                table[idx][a as usize] = pi;
            }
        }

        if m > 0 {
            // (1/d)(H^n - μ H^{n-k}) in the classical basis
            let top = self.power_in_classical(n);
            let lower = self.power_in_classical(n - self.k).scale(&scalar::from_big(&self.lvec.mu));
            let inv_d = ExactScalar::new(BigInt::one(), self.degree.clone());
            let base = (&top - &lower).scale(&inv_d);
            for i in 0..m {
                for j in 0..m {
                    table[self.index_of(BasisElement::Pi(i))][self.index_of(BasisElement::Pi(j))] =
                        base.scale(&self.pairing[i][j]);
                }
            }
        }
        table
    }

    /// `e_a · e_b` for basis indices.
    pub fn basis_product(&self, a: usize, b: usize) -> &RingElement {
        &self.table[a][b]
    }

    /// Nonzero structure constants `(a, b, c, value)` with `e_a·e_b = Σ value·e_c`,
    /// in lexicographic index order.
    pub fn table_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &ExactScalar)> + '_ {
        self.table.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(b, prod)| prod.nonzero().map(move |(c, v)| (a, b, c, v)))
        })
    }

    /// Bilinear extension of the structure-constant table.
    pub fn qmul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut out = RingElement::zero(self.dim());
        for (a, xa) in x.nonzero() {
            for (b, yb) in y.nonzero() {
                out.add_scaled(&self.table[a][b], &(xa * yb));
            }
        }
        out
    }

    fn mul_by_basis(&self, x: &RingElement, c: usize) -> RingElement {
        let mut out = RingElement::zero(self.dim());
        for (a, xa) in x.nonzero() {
            out.add_scaled(&self.table[a][c], xa);
        }
        out
    }

    fn basis_mul(&self, a: usize, y: &RingElement) -> RingElement {
        let mut out = RingElement::zero(self.dim());
        for (b, yb) in y.nonzero() {
            out.add_scaled(&self.table[a][b], yb);
        }
        out
    }

    /// Intersection pairing of two basis vectors: `(H_a|H_b) = d` when
    /// `a + b = n`, the given matrix on primitive classes, zero otherwise.
    pub fn basis_pairing(&self, a: usize, b: usize) -> ExactScalar {
        match (self.element_at(a), self.element_at(b)) {
            (BasisElement::H(p), BasisElement::H(q)) if p + q == self.n => scalar::from_big(&self.degree),
            (BasisElement::Pi(i), BasisElement::Pi(j)) => self.pairing[i][j].clone(),
            _ => ExactScalar::zero(),
        }
    }

    /// Poincaré pairing `(x|y)`.
    pub fn pair(&self, x: &RingElement, y: &RingElement) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (a, xa) in x.nonzero() {
            for (b, yb) in y.nonzero() {
                let p = self.basis_pairing(a, b);
                if !p.is_zero() {
                    acc += xa * yb * p;
                }
            }
        }
        acc
    }

    /// Common real degree of the nonzero coordinates; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self, x: &RingElement) -> Result<Option<u32>> {
        let mut degrees = x.nonzero().map(|(i, _)| self.basis_degree(i));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// The part of `x` lying in real degree `degree`.
    pub fn graded_piece(&self, x: &RingElement, degree: i64) -> RingElement {
        let mut out = RingElement::zero(self.dim());
        for (i, c) in x.nonzero() {
            if i64::from(self.basis_degree(i)) == degree {
                out.coords[i] = c.clone();
            }
        }
        out
    }

    /// `⟨x, y, z⟩_j = ((x·y)_j | z)`, where `(x·y)_j` is the piece of real
    /// degree `deg x + deg y - 2kj`. Negative target degrees give zero.
    pub fn triple_product(
        &self,
        x: &RingElement,
        y: &RingElement,
        z: &RingElement,
        j: u32,
    ) -> Result<ExactScalar> {
        let dx = self.homogeneous_degree(x)?;
        let dy = self.homogeneous_degree(y)?;
        self.homogeneous_degree(z)?;
        let (Some(dx), Some(dy)) = (dx, dy) else {
            return Ok(ExactScalar::zero());
        };
        let target = i64::from(dx) + i64::from(dy) - 2 * i64::from(self.k) * i64::from(j);
        if target < 0 {
            return Ok(ExactScalar::zero());
        }
        let piece = self.graded_piece(&self.qmul(x, y), target);
        Ok(self.pair(&piece, z))
    }

    /// Scalar relating the pairing on primitive classes to the pairing
    /// induced through lines meeting a subvariety of degree `dy` and
    /// codimension `k`: `-ℓ_0 · dy / d`.
    pub fn primitive_pairing_scale(&self, dy: u32) -> Result<ExactScalar> {
        if dy == 0 {
            return Err(Error::InvalidArgument("subvariety degree must be >= 1".into()));
        }
        Ok(-ExactScalar::new(&self.lvec.l[0] * BigInt::from(dy), self.degree.clone()))
    }

    /// True when `H^0, …, H^n` are linearly independent in the classical
    /// basis, i.e. `H^{n+1} = μ H^{n+1-k}` is the lowest relation on `H`.
    pub fn quantum_powers_independent(&self) -> bool {
        let rows: Vec<Vec<ExactScalar>> = (0..=self.n)
            .map(|j| {
                self.classical_from_quantum_power(j).expect("j <= n").coords[..=self.n as usize].to_vec()
            })
            .collect();
        rank(rows) == self.n as usize + 1
    }

    /// Exhaustive check of the ring axioms over all basis pairs and triples.
    pub fn verify(&self) -> RingReport {
        let dim = self.dim();
        let two_k = 2 * i64::from(self.k);
        let mut violations = Vec::new();
        let mut flag = |check: Check, idx: &[usize]| {
            violations.push(Violation {
                check,
                basis: idx.iter().map(|&i| self.element_at(i)).collect(),
            })
        };

        for a in 0..dim {
            let e = RingElement::unit_vector(dim, a);
            if self.table[0][a] != e || self.table[a][0] != e {
                flag(Check::Unit, &[a]);
            }
        }

        for a in 0..dim {
            let da = i64::from(self.basis_degree(a));
            for b in 0..dim {
                let db = i64::from(self.basis_degree(b));
                let prod = &self.table[a][b];
                let graded = prod.nonzero().all(|(c, _)| {
                    let drop = da + db - i64::from(self.basis_degree(c));
                    drop >= 0 && drop % two_k == 0
                });
                if !graded {
                    flag(Check::Grading, &[a, b]);
                }
                let sign = if (da * db) % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() };
                if *prod != self.table[b][a].scale(&sign) {
                    flag(Check::GradedCommutativity, &[a, b]);
                }
            }
        }

        for a in 0..dim {
            let da = i64::from(self.basis_degree(a));
            for b in 0..dim {
                let db = i64::from(self.basis_degree(b));
                let ab = &self.table[a][b];
                for c in 0..dim {
                    let dc = i64::from(self.basis_degree(c));
                    let left = self.mul_by_basis(ab, c);
                    let bc = &self.table[b][c];
                    let right = self.basis_mul(a, bc);
                    if left != right {
                        flag(Check::Associativity, &[a, b, c]);
                    }
                    let ab_c = self.pair(ab, &RingElement::unit_vector(dim, c));
                    let a_bc = self.pair(&RingElement::unit_vector(dim, a), bc);
                    if ab_c != a_bc {
                        flag(Check::Frobenius, &[a, b, c]);
                    }
                    let bc_a = self.pair(bc, &RingElement::unit_vector(dim, a));
                    let sign = if (da * (db + dc)) % 2 == 0 { bc_a } else { -bc_a };
                    if ab_c != sign {
                        flag(Check::CyclicPairing, &[a, b, c]);
                    }
                }
            }
        }
        RingReport { violations }
    }

    /// Adds `delta` to one structure constant. For fault-injection tests.
    #[doc(hidden)]
    pub fn perturb_entry(&mut self, a: usize, b: usize, c: usize, delta: &ExactScalar) {
        self.table[a][b].coords[c] += delta;
    }
}

fn validate_pairing(n: u32, m: usize, pairing: &[Vec<ExactScalar>]) -> Result<()> {
    if pairing.len() != m || pairing.iter().any(|row| row.len() != m) {
        return Err(Error::PairingShape { expected: m });
    }
    let odd = n % 2 == 1;
    for i in 0..m {
        for j in 0..m {
            let expected = if odd { -pairing[j][i].clone() } else { pairing[j][i].clone() };
            if pairing[i][j] != expected {
                return Err(Error::PairingSymmetry(if odd { "antisymmetric" } else { "symmetric" }));
            }
        }
    }
    if rank(pairing.to_vec()) != m {
        return Err(Error::PairingDegenerate);
    }
    Ok(())
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(mut rows: Vec<Vec<ExactScalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn cubic_threefold() -> QRing {
        QRing::for_complete_intersection(&CIData::new(3, vec![3]).unwrap()).unwrap()
    }

    fn comb(ring: &QRing, terms: &[(i64, u32)]) -> RingElement {
        terms.iter().fold(RingElement::zero(ring.dim()), |acc, &(c, p)| {
            &acc + &ring.h(p).scale(&int(c))
        })
    }

    #[test]
    fn quantum_powers_in_classical_basis() {
        let ring = cubic_threefold();
        assert_eq!(ring.classical_from_quantum_power(0).unwrap(), ring.h(0));
        assert_eq!(ring.classical_from_quantum_power(1).unwrap(), ring.h(1));
        assert_eq!(ring.classical_from_quantum_power(2).unwrap(), comb(&ring, &[(1, 2), (6, 0)]));
        assert_eq!(ring.classical_from_quantum_power(3).unwrap(), comb(&ring, &[(1, 3), (21, 1)]));
        assert!(ring.classical_from_quantum_power(4).is_err());
    }

    #[test]
    fn power_reduction() {
        let ring = cubic_threefold();
        assert_eq!(
            ring.reduce_power(4),
            ReducedPower { coefficient: BigInt::from(27), exponent: 2 }
        );
        assert_eq!(ring.reduce_power(3), ReducedPower { coefficient: BigInt::one(), exponent: 3 });
        assert_eq!(
            ring.reduce_power(6),
            ReducedPower { coefficient: BigInt::from(729), exponent: 2 }
        );
        let ring22 = QRing::for_complete_intersection(&CIData::new(3, vec![2, 2]).unwrap()).unwrap();
        assert_eq!(
            ring22.reduce_power(5),
            ReducedPower { coefficient: BigInt::from(16), exponent: 3 }
        );
    }

    #[test]
    fn primitive_products() {
        let ring = cubic_threefold();
        // pairing(π_1, π_2) = 1
        let prod = ring.qmul(&ring.pi(0), &ring.pi(1));
        let expected = comb(&ring, &[(1, 3), (-6, 1)]).scale(&ratio(1, 3));
        assert_eq!(prod, expected);
        assert!(ring.qmul(&ring.pi(0), &ring.pi(0)).is_zero());
        assert!(ring.qmul(&ring.h(1), &ring.pi(0)).is_zero());
        assert_eq!(ring.qmul(&ring.h(0), &ring.pi(0)), ring.pi(0));
        assert_eq!(ring.qmul(&ring.h(2), &ring.pi(1)), ring.pi(1).scale(&int(-6)));
    }

    #[test]
    fn hyperplane_products() {
        let ring = cubic_threefold();
        // (H²-6)² = H⁴ - 12H² + 36 = 15H² + 36 = 15 H_2 + 126 H_0
        assert_eq!(ring.qmul(&ring.h(2), &ring.h(2)), comb(&ring, &[(15, 2), (126, 0)]));
        // H·H_2 = H_3 + ℓ_1 H_1
        assert_eq!(ring.qmul(&ring.h(1), &ring.h(2)), comb(&ring, &[(1, 3), (15, 1)]));
        // H_3·H_3 = (H³ - 21H)² = 36 H² = 36 H_2 + 216 H_0
        assert_eq!(ring.qmul(&ring.h(3), &ring.h(3)), comb(&ring, &[(36, 2), (216, 0)]));
    }

    #[test]
    fn triple_products() {
        let ring = cubic_threefold();
        let t = |a, b, c, j| ring.triple_product(&ring.h(a), &ring.h(b), &ring.h(c), j).unwrap();
        // ⟨H, H_{n-p}, H_{k+p-1}⟩ = d·ℓ_p
        assert_eq!(t(1, 3, 1, 1), int(18));
        assert_eq!(t(1, 2, 2, 1), int(45));
        assert_eq!(t(1, 1, 3, 1), int(18));
        assert_eq!(t(0, 1, 2, 0), int(3));
        assert_eq!(t(0, 1, 1, 0), int(0));
        assert_eq!(t(2, 2, 3, 2), int(378));
        assert_eq!(t(1, 3, 3, 2), int(108));
        assert_eq!(t(3, 3, 3, 3), int(648));
        assert_eq!(t(0, 0, 3, 5), int(0));
        let tp = |i, j| ring.triple_product(&ring.h(2), &ring.pi(i), &ring.pi(j), 1).unwrap();
        assert_eq!(tp(0, 1), int(-6));
        assert_eq!(tp(1, 0), int(6));
        assert_eq!(tp(0, 0), int(0));
    }

    #[test]
    fn triple_product_requires_homogeneous() {
        let ring = cubic_threefold();
        let mixed = &ring.h(1) + &ring.h(2);
        assert_eq!(
            ring.triple_product(&mixed, &ring.h(1), &ring.h(1), 1),
            Err(Error::NotHomogeneous)
        );
    }

    #[test]
    fn pairing_scale() {
        let ring = cubic_threefold();
        assert_eq!(ring.primitive_pairing_scale(1).unwrap(), int(-2));
        assert_eq!(ring.primitive_pairing_scale(3).unwrap(), int(-6));
        assert!(ring.primitive_pairing_scale(0).is_err());
        let ring22 = QRing::for_complete_intersection(&CIData::new(3, vec![2, 2]).unwrap()).unwrap();
        assert_eq!(ring22.primitive_pairing_scale(1).unwrap(), int(-1));
    }

    #[test]
    fn verification_is_clean() {
        assert!(cubic_threefold().verify().is_clean());
        let quadric = CIData::new(4, vec![2]).unwrap();
        let ring = QRing::for_complete_intersection(&quadric).unwrap();
        assert!(ring.verify().is_clean());
        assert!(ring.quantum_powers_independent());
    }

    #[test]
    fn corrupted_table_is_reported() {
        let mut ring = cubic_threefold();
        ring.perturb_entry(1, 2, 1, &int(1));
        let report = ring.verify();
        assert!(!report.is_clean());
        assert!(report.violations.iter().any(|v| v.check == Check::GradedCommutativity));
    }

    #[test]
    fn build_rejections() {
        let odd_quadric = CIData::new(3, vec![2]).unwrap();
        assert_eq!(QRing::for_complete_intersection(&odd_quadric), Err(Error::OddQuadric));
        let even_quadric = CIData::new(4, vec![2]).unwrap();
        let lv = grassmann::l_vector_from_generating_function(&even_quadric).unwrap();
        let two = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(
            QRing::build(&even_quadric, lv, 2, two),
            Err(Error::QuadricPrimitiveRank(2))
        );
        let cubic = CIData::new(3, vec![3]).unwrap();
        let lv = grassmann::l_vector_from_generating_function(&cubic).unwrap();
        let sym = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert!(matches!(
            QRing::build(&cubic, lv.clone(), 2, sym),
            Err(Error::PairingSymmetry(_))
        ));
        let zero = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert_eq!(QRing::build(&cubic, lv.clone(), 2, zero), Err(Error::PairingDegenerate));
        assert_eq!(
            QRing::build(&cubic, lv.clone(), 2, vec![vec![int(1)]]),
            Err(Error::PairingShape { expected: 2 })
        );
        // n = 2k - 1 needs nonzero middle cohomology
        assert_eq!(QRing::build(&cubic, lv, 0, vec![]), Err(Error::MissingMiddleCohomology));
        let bad = CIData::new(2, vec![7]).unwrap();
        assert!(matches!(
            QRing::for_complete_intersection(&bad),
            Err(Error::HypothesisFails { .. })
        ));
    }

    #[test]
    fn abstract_rings() {
        let l = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let (m, pairing) = default_primitive_model(3);
        let ring = QRing::from_l_vector(3, 2, BigInt::from(3), l(&[6, 15, 6]), m, pairing.clone()).unwrap();
        assert_eq!(ring, {
            let mut r = cubic_threefold();
            r.ci = None;
            r
        });
        assert_eq!(
            QRing::from_l_vector(3, 2, BigInt::from(3), l(&[6, 15, 7]), m, pairing.clone()),
            Err(Error::AsymmetricLineCounts { p: 0, q: 2 })
        );
        assert!(QRing::from_l_vector(3, 1, BigInt::from(3), l(&[1, 1, 1, 1]), m, pairing).is_err());
        // odd quadric's H-subalgebra, m = 0
        let ring = QRing::from_l_vector(3, 3, BigInt::from(2), l(&[2, 2]), 0, vec![]).unwrap();
        assert!(ring.verify().is_clean());
    }

    #[test]
    fn matrix_rank() {
        assert_eq!(rank(vec![vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(rank(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]), 2);
        assert_eq!(rank(vec![]), 0);
    }
}
