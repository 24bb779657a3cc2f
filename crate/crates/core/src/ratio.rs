//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::input(format!("invalid rational number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{fraction}");
    let mantissa: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let scale = num_traits::pow(BigInt::from(10), fraction.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Always renders as `p/q`, including integers (`1/1`).
pub fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn floor_u64(v: &Rational) -> Option<u64> {
    if v.is_negative() {
        return None;
    }
    v.floor().to_integer().to_u64()
}

pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(v: &Rational) -> bool {
    v.denom().is_one()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn check_epsilon(eps: &Rational) -> Result<()> {
    if eps.is_positive() && eps < &Rational::one() {
        Ok(())
    } else {
        Err(Error::Epsilon(format_rational(eps)))
    }
}

/// Serde adapter: writes `"p/q"`, reads strings or JSON numbers.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Raw {
        Text(String),
        Int(i64),
        Float(f64),
    }

    impl Raw {
        pub(crate) fn into_rational(self) -> std::result::Result<Rational, String> {
            match self {
                Raw::Text(t) => parse_rational(&t).map_err(|e| e.to_string()),
                Raw::Int(i) => Ok(int(i)),
                // Go through the shortest decimal representation so 0.1 stays 1/10.
                Raw::Float(f) if f.is_finite() => parse_rational(&f.to_string()).map_err(|e| e.to_string()),
                Raw::Float(f) => Err(format!("non-finite number {f}")),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Raw::deserialize(d)?.into_rational().map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_str(&format_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            match Option::<Raw>::deserialize(d)? {
                Some(raw) => raw.into_rational().map(Some).map_err(de::Error::custom),
                None => Ok(None),
            }
        }
    }
}
