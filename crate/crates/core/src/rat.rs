//! Exact rational scalars.
//!
//! Every coordinate, radius and function value in this crate is a
//! [`BigRational`] in lowest terms. The helpers here cover the textual
//! `p/q` form used by the file format and the CLI, and a few constructors
//! that keep call sites short.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always in canonical form (positive denominator,
/// coprime numerator and denominator).
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i32) -> Rat {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Parses an optionally signed integer or `p/q`.
///
/// Only ASCII digits are accepted; the denominator carries no sign and must
/// be nonzero. No decimal or exponent forms: inputs stay exact.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !is_digits(digits) || den.is_some_and(|d| !is_digits(d)) {
        return Err(ParseRatError::Malformed(s.to_string()));
    }
    let n = BigInt::from_str(num.strip_prefix('+').unwrap_or(num))
        .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| ParseRatError::Malformed(s.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseRatError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(n, d))
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Renders `p/q` in lowest terms, or `p` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Lossy conversion for plotting only.
pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64()
        .unwrap_or(if r.is_negative() { f64::MIN } else { f64::MAX })
}

/// Least integer `>= r`.
pub fn ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| lcm(&acc, v.denom()))
}

/// `lcm(a, b)` for positive `a`, `b`.
///
/// Reduces the larger operand modulo the smaller before taking the gcd, so
/// folding many small denominators into one huge accumulator stays linear
/// in the accumulator size per step.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    let g = small.gcd(&(big % small));
    (a / g) * b
}
