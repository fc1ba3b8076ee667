//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`: numerator and denominator are
//! arbitrary-precision integers, and every constructor reduces to canonical
//! form (positive denominator, coprime parts, zero as `0/1`), so `==` is a
//! structural comparison.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as a canonical rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`, allowing whitespace around either part.
///
/// The result is canonical; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Sign of `r` as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapters that store rationals as canonical strings.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat(0, -7);
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(format_rational(&z), "0");
    }

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&rat(1, 64)), "1/64");
        assert_eq!(format_rational(&rat(-3, 1)), "-3");
        assert_eq!(format_rational(&rat(3, -4)), "-3/4");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational(" 3 / 6 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-5").unwrap(), int(-5));
        assert_eq!(parse_rational("4/-8").unwrap(), rat(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse(_))));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 4), rat(5, 6), int(3)];
        assert_eq!(denominator_lcm(&v), BigInt::from(12));
    }

    proptest::proptest! {
        #[test]
        fn text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
