//! Exact rational scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("`{0}` is not a rational number (expected `p` or `p/q`)")]
pub struct ScalarParseError(pub String);

/// Parses `"5"`, `"-2/3"`, `"7/3"`. Surrounding whitespace is ignored.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let t = text.trim();
    // Ratio::from_str panics on a zero denominator in some versions; check first.
    if let Some((_, den)) = t.split_once('/') {
        if BigInt::from_str(den.trim()).map_or(true, |d| d.is_zero()) {
            return Err(ScalarParseError(text.to_string()));
        }
    }
    Scalar::from_str(t).map_err(|_| ScalarParseError(text.to_string()))
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}
