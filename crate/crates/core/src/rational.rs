//! Exact rational helpers shared across the crate.
//!
//! Every quantity the engine produces is a [`Rational`]. Values travel through
//! documents as strings of the form `p/q` or bare integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `p/q`, `-p/q` or an integer literal.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    let (negative, body) = match input.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, input),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (
            parse_digits(n).ok_or_else(|| err("numerator is not a digit string"))?,
            parse_digits(d).ok_or_else(|| err("denominator is not a digit string"))?,
        ),
        None => (
            parse_digits(body).ok_or_else(|| err("expected an integer or p/q"))?,
            BigInt::from(1),
        ),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    let num = if negative { -num } else { num };
    Ok(Rational::new(num, den))
}

/// Canonical string form: `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal approximation rounded half away from zero to `places` digits,
/// with trailing zeros trimmed.
pub fn approx_decimal(r: &Rational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2;
    let rounded = if &twice >= scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut out = String::new();
    if r.is_negative() && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if places > 0 && !frac_part.is_zero() {
        let digits = format!("{:0>width$}", frac_part.to_string(), width = places);
        out.push('.');
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

/// `"9/20 (0.45)"`: exact value next to a six-place decimal.
pub fn display_with_decimal(r: &Rational) -> String {
    format!("{} ({})", format_rational(r), approx_decimal(r, 6))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational string \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
            Err(E::custom(format!(
                "floating-point literal {v} is not exact; write it as \"p/q\""
            )))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("9/20").unwrap(), ratio(9, 20));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("0").unwrap(), int(0));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1/0", "1.5", "a/2", "1/-2", " 1", "--1", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lowest_terms_after_parse() {
        let r = parse_rational("12/30").unwrap();
        assert_eq!(format_rational(&r), "2/5");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(approx_decimal(&ratio(9, 20), 6), "0.45");
        assert_eq!(approx_decimal(&ratio(1, 3), 6), "0.333333");
        assert_eq!(approx_decimal(&ratio(2, 3), 6), "0.666667");
        assert_eq!(approx_decimal(&ratio(-1, 2), 6), "-0.5");
        assert_eq!(approx_decimal(&int(1), 6), "1");
        assert_eq!(approx_decimal(&ratio(-1, 10_000_000), 6), "0");
        assert_eq!(display_with_decimal(&ratio(9, 20)), "9/20 (0.45)");
    }
}
