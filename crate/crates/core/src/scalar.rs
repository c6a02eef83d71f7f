//! Exact rational payoff values.
//!
//! Every payoff and payment is a [`Scalar`], an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. Nothing in this crate
//! ever rounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Scalar = BigRational;

/// Builds an integer-valued scalar.
pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// Builds `numer / denom`, reduced.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    input: String,
    reason: &'static str,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseScalarError {}

/// Parses an integer (`"-3"`), a finite decimal (`"0.5"`, `"-1.25"`) or a
/// fraction (`"3/4"`, `"-6/8"`) into an exact rational.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let fail = |reason| ParseScalarError {
        input: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(fail("empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let numer = parse_integer(num.trim()).ok_or_else(|| fail("bad numerator"))?;
        let denom = parse_integer(den.trim()).ok_or_else(|| fail("bad denominator"))?;
        if denom.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Scalar::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("bad fractional part"));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) || whole.len() - whole_digits.len() > 1
        {
            return Err(fail("bad integer part"));
        }
        let digits = format!("{whole_digits}{frac}");
        let mut numer: BigInt = digits.parse().map_err(|_| fail("bad digits"))?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Scalar::new(numer, denom));
    }
    parse_integer(s)
        .map(Scalar::from_integer)
        .ok_or_else(|| fail("not a number"))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `max(a, b)` without cloning both sides.
pub(crate) fn max_of(a: Scalar, b: &Scalar) -> Scalar {
    if &a < b {
        b.clone()
    } else {
        a
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}
