//! Bivariate polynomials in two formal Chern roots `α`, `β`.
//!
//! Terms live in a sparse exponent map ordered lexicographically on
//! `(i, j)` (the exponents of `α` and `β`). Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{self, ExactScalar};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), ExactScalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · α^i β^j`
    pub fn monomial(c: ExactScalar, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn alpha() -> Self {
        Self::monomial(ExactScalar::one(), 1, 0)
    }

    pub fn beta() -> Self {
        Self::monomial(ExactScalar::one(), 0, 1)
    }

    /// `a·α + b·β`
    pub fn linear(a: ExactScalar, b: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, a);
        p.add_term(0, 1, b);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), ExactScalar)>,
    {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(ExactScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> ExactScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn evaluate(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        self.terms.iter().fold(ExactScalar::zero(), |acc, (&(i, j), c)| {
            acc + c * scalar::pow(a, i) * scalar::pow(b, j)
        })
    }

    /// True iff the coefficient of `α^i β^j` equals that of `α^j β^i` for every term.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(i, j), c)| self.terms.get(&(j, i)) == Some(c))
    }

    /// The common total degree of all terms, or `None` for the zero
    /// polynomial and for inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|&(i, j)| i + j);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl std::iter::Product for BiPoly {
    fn product<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("{}*a^{}*b^{}", scalar::format(c), i, j))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn a() -> BiPoly {
        BiPoly::alpha()
    }
    fn b() -> BiPoly {
        BiPoly::beta()
    }
    fn mono(c: i64, i: u32, j: u32) -> BiPoly {
        BiPoly::monomial(int(c), i, j)
    }

    #[test]
    fn add_examples() {
        assert_eq!(a() + b(), BiPoly::linear(int(1), int(1)));
        let p = mono(3, 2, 1) + mono(-1, 0, 4);
        assert_eq!(&p + &BiPoly::zero(), p);
        let d = &a() - &b();
        let e = &b() - &a();
        assert!((d + e).is_zero());
    }

    #[test]
    fn mul_examples() {
        let s = a() + b();
        let d = a() - b();
        assert_eq!(&s * &d, mono(1, 2, 0) + mono(-1, 0, 2));
        assert_eq!(&d * &d, mono(1, 2, 0) + mono(-2, 1, 1) + mono(1, 0, 2));
    }

    #[test]
    fn sym_power_product_for_three() {
        let prod: BiPoly = (0..=3)
            .map(|j| BiPoly::linear(int(j), int(3 - j)))
            .product();
        // 9αβ(2α² + 5αβ + 2β²)
        let expected = mono(18, 3, 1) + mono(45, 2, 2) + mono(18, 1, 3);
        assert_eq!(prod, expected);
    }

    #[test]
    fn coefficient_lookup() {
        let p = mono(1, 2, 0) + mono(-2, 1, 1) + mono(1, 0, 2);
        assert_eq!(p.coefficient(1, 1), int(-2));
        assert_eq!(p.coefficient(5, 0), int(0));
        assert_eq!(BiPoly::zero().coefficient(3, 3), int(0));
    }

    #[test]
    fn evaluation() {
        assert_eq!((a() + b()).evaluate(&int(1), &int(1)), int(2));
        assert_eq!(mono(1, 2, 2).evaluate(&int(2), &int(3)), int(36));
        // every factor jα+(3-j)β is 3 at (1,1): 3^4 = 81, and 27 after the 1/3
        let prod: BiPoly = (0..=3)
            .map(|j| BiPoly::linear(int(j), int(3 - j)))
            .product();
        assert_eq!(prod.evaluate(&int(1), &int(1)), int(81));
        let scaled = prod.scale(&crate::scalar::ratio(1, 3));
        assert_eq!(scaled.evaluate(&int(1), &int(1)), int(27));
    }

    #[test]
    fn symmetry() {
        assert!((a() + b()).is_symmetric());
        assert!(!(a() - b()).is_symmetric());
        for d in 1..=8 {
            let prod: BiPoly = (0..=d)
                .map(|j| BiPoly::linear(int(j), int(d - j)))
                .product();
            assert!(prod.is_symmetric(), "d = {d}");
        }
    }

    #[test]
    fn homogeneity() {
        assert_eq!((a() + b()).homogeneous_degree(), Some(1));
        assert_eq!((a() + BiPoly::one()).homogeneous_degree(), None);
        assert_eq!(BiPoly::zero().homogeneous_degree(), None);
        assert!(BiPoly::zero().is_homogeneous());
    }

    #[test]
    fn deterministic_display() {
        let p = mono(2, 0, 1) + mono(-1, 1, 0);
        assert_eq!(p.to_string(), "2*a^0*b^1 + -1*a^1*b^0");
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..=10, 0u32..=10), -5i64..=5), 0..8)
            .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(e, c)| (e, int(c)))))
    }

    fn arb_homogeneous(deg: u32) -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..=deg, -5i64..=5), 1..6).prop_map(move |ts| {
            BiPoly::from_terms(ts.into_iter().map(|(i, c)| ((i, deg - i), int(c))))
        })
    }

    /// Naive convolution on dense coefficient grids.
    fn convolution_oracle(p: &BiPoly, q: &BiPoly, i: u32, j: u32) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for i1 in 0..=i {
            for j1 in 0..=j {
                acc += p.coefficient(i1, j1) * q.coefficient(i - i1, j - j1);
            }
        }
        acc
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn mul_matches_convolution(p in arb_poly(), q in arb_poly(), i in 0u32..=20, j in 0u32..=20) {
            prop_assert_eq!((&p * &q).coefficient(i, j), convolution_oracle(&p, &q, i, j));
        }

        #[test]
        fn homogeneous_degrees_add(
            (p, q, da, db) in (0u32..=10, 0u32..=10).prop_flat_map(|(da, db)| {
                (arb_homogeneous(da), arb_homogeneous(db), Just(da), Just(db))
            })
        ) {
            let prod = &p * &q;
            prop_assert!(prod.is_zero() || prod.homogeneous_degree() == Some(da + db));
        }
    }
}
