//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps values reduced with a positive denominator, so
//! the scalar type is an alias plus a few helpers for construction and the
//! decimal-string wire format (`"n"` or `"n/d"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Scalar {
    Scalar::from_integer(v)
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_decimal(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `"n"` or `"n/d"` with decimal integers. Anything else (floats,
/// symbols, complex literals) is rejected.
pub fn parse_decimal(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not an exact rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Integer power with a nonnegative exponent.
pub fn pow(base: &Scalar, exp: u32) -> Scalar {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn is_positive(s: &Scalar) -> bool {
    s.is_positive()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}
