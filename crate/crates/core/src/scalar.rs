//! Exact rational scalars and their text form.
//!
//! Rationals are written as `"num/den"`, or as a bare integer when the
//! denominator is one. Floats never appear in any output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactScalar = BigRational;

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(v: &BigInt) -> ExactScalar {
    BigRational::from_integer(v.clone())
}

/// Returns the integer value if `q` is integral.
pub fn to_integer(q: &ExactScalar) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn format(q: &ExactScalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<ExactScalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn pow(base: &ExactScalar, exp: u32) -> ExactScalar {
    (0..exp).fold(ExactScalar::one(), |acc, _| acc * base)
}

pub fn is_nonnegative(q: &ExactScalar) -> bool {
    !q.is_negative()
}
