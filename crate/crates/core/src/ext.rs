//! Exact extended rationals and rational parsing/formatting helpers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational number extended with both infinities.
///
/// The derived ordering is total: `NegInf < Finite(_) < PosInf`, and finite
/// values compare by their rational value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRational::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Adds a finite rational; infinities absorb.
    pub fn add_finite(&self, r: &BigRational) -> Self {
        match self {
            ExtRational::Finite(x) => ExtRational::Finite(x + r),
            other => other.clone(),
        }
    }

    /// Sum of two extended values. `None` for `+inf + -inf`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        use ExtRational::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    /// Multiplies by a nonnegative rational with the convention `0 * (+-inf) = 0`.
    pub fn scale_nonneg(&self, b: &BigRational) -> Self {
        debug_assert!(!b.is_negative());
        if b.is_zero() {
            return ExtRational::zero();
        }
        match self {
            ExtRational::Finite(x) => ExtRational::Finite(x * b),
            other => other.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(x) => ExtRational::Finite(-x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::NegInf => f64::NEG_INFINITY,
            ExtRational::PosInf => f64::INFINITY,
            ExtRational::Finite(x) => rational_to_f64(x),
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(r: BigRational) -> Self {
        ExtRational::Finite(r)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => write!(f, "-inf"),
            ExtRational::PosInf => write!(f, "+inf"),
            ExtRational::Finite(r) => write!(f, "{}", format_rational(r)),
        }
    }
}

impl FromStr for ExtRational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+inf" | "inf" => Ok(ExtRational::PosInf),
            "-inf" => Ok(ExtRational::NegInf),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"7"`, `"-3"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let err = |reason| RationalParseError {
        input: s.to_string(),
        reason,
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| err("numerator is not an integer"))?;
    let den = match den {
        Some(d) => parse_int(d).ok_or_else(|| err("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Canonical text form: `"2"`, `"-3/2"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Common positive multiplier turning every value into an integer, and the
/// scaled integers themselves.
pub fn scale_to_integers(values: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let mult = values.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled = values
        .iter()
        .map(|r| (r * BigRational::from_integer(mult.clone())).to_integer())
        .collect();
    (mult, scaled)
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}
