//! The exact scalar field: arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already maintains the invariants we need
//! (reduced fraction, positive denominator, zero as `0/1`), so it is used
//! directly as the scalar type throughout the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand constructor, mostly for tests and fixtures.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parses `"p"` or `"p/q"` with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Rounds to the nearest integer, halves away from zero.
pub fn round_to_i64(q: &Rational) -> i64 {
    let r = q.round();
    bigint_to_i64(r.numer())
}

pub fn bigint_to_i64(b: &BigInt) -> i64 {
    i64::try_from(b).unwrap_or_else(|_| panic!("integer {b} out of i64 range"))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    let n = bigint_to_f64(q.numer());
    let d = bigint_to_f64(q.denom());
    n / d
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    // Good enough for oracle work: desk-scale rationals fit in f64 exactly
    // or nearly so.
    let (sign, digits) = b.to_u64_digits();
    let mut value = 0.0f64;
    for d in digits.iter().rev() {
        value = value * 2f64.powi(64) + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -value
    } else {
        value
    }
}

/// gcd of a slice of big integers, zero entries ignored; 0 if all zero.
pub fn bigint_gcd_many<'a>(values: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        if v.is_zero() {
            continue;
        }
        g = num_integer::gcd(g, v.abs());
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat_int(-4));
        assert!(parse_rational("1/0").is_none());
        // Ties round away from zero.
        assert_eq!(round_to_i64(&rat(1, 2)), 1);
        assert_eq!(round_to_i64(&rat(-1, 2)), -1);
        assert_eq!(round_to_i64(&rat(7, 3)), 2);
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rational_to_f64(&rat(3, 4)), 0.75);
        assert_eq!(rational_to_f64(&rat(-7, 2)), -3.5);
    }
}
