//! Exact rational scalars and their `p/q` text form.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! floating point is never used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal `{0}`")]
    BadInteger(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// `n/d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optionally signed) into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    if den.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational as `p` when integral and `p/q` (with `q > 0`,
/// `gcd(p, q) = 1`) otherwise. Never decimal.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The integer value of `r`, when it has one.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// True when `r` is an integer multiple of `step` (`step != 0`).
pub fn is_multiple_of(r: &Rat, step: &Rat) -> bool {
    assert!(!step.is_zero(), "zero step");
    is_integer(&(r / step))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/6", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat("8/2").unwrap()), "4");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
        assert_eq!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn multiples() {
        assert!(is_multiple_of(&rat(3, 2), &rat(1, 2)));
        assert!(is_multiple_of(&rat_int(0), &rat(1, 4)));
        assert!(!is_multiple_of(&rat(1, 3), &rat(1, 2)));
    }
}
