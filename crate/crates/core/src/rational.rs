//! Rational helpers and the `p/q` text format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p`. Surrounding whitespace is ignored, nothing else is.
pub fn parse_rational(input: &str) -> Result<Q, ParseError> {
    let text = input.trim();
    if text.is_empty() {
        return Err(ParseError::new("rational", input, "empty"));
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_int(num).ok_or_else(|| ParseError::new("rational", input, "bad numerator"))?;
    let den = match den {
        Some(d) => {
            parse_int(d).ok_or_else(|| ParseError::new("rational", input, "bad denominator"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::new("rational", input, "zero denominator"));
    }
    Ok(Q::new(num, den))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Canonical text form: `p/q` in lowest terms, `p` when `q = 1`.
pub fn format_rational(x: &Q) -> String {
    x.to_string()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn floor(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Q) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    num_traits::ToPrimitive::to_i64(x)
}

/// Lossy conversion for display and SVG output only.
pub fn to_f64(x: &Q) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapter: rationals cross serialization boundaries as `"p/q"` strings.
pub mod serde_q {
    use super::{format_rational, parse_rational, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
