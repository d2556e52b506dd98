//! Number types shared by the exact and floating-point code paths.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used by the symbolic layers.
pub type Q = BigRational;

/// Relative tolerance used when comparing `f64` values.
pub const FLOAT_TOL: f64 = 1e-12;

/// Arithmetic needed by the exponent formulas and region predicates.
///
/// Implemented exactly for [`Q`] and with a relative tolerance of
/// [`FLOAT_TOL`] for `f64`. Ties within the tolerance count as equal, so
/// strict comparisons are conservative.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn int(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::int(num) / Self::int(den)
    }

    fn to_f64(&self) -> f64;

    /// `self < other` with tolerance-aware ties.
    fn lt_strict(&self, other: &Self) -> bool;

    /// Equality up to the scalar's tolerance.
    fn near(&self, other: &Self) -> bool {
        !self.lt_strict(other) && !other.lt_strict(self)
    }

    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn lt_strict(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.abs()).max(other.abs());
        *self < *other - FLOAT_TOL * scale
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Q {
    fn int(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        q_to_f64(self)
    }

    fn lt_strict(&self, other: &Self) -> bool {
        self < other
    }

    fn is_exact() -> bool {
        true
    }
}

pub(crate) fn max2<T: Scalar>(a: T, b: T) -> T {
    if a < b {
        b
    } else {
        a
    }
}

pub(crate) fn min2<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// Best `f64` approximation of a rational.
pub fn q_to_f64(q: &Q) -> f64 {
    if let Some(v) = num_traits::ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    let n = num_traits::ToPrimitive::to_f64(q.numer()).unwrap_or(f64::NAN);
    let d = num_traits::ToPrimitive::to_f64(q.denom()).unwrap_or(f64::NAN);
    n / d
}

/// Shorthand for `num/den` as a rational.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parse `"10/3"`, `"-3.5"`, `"7"` or `"1.5e-3"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Q::from_integer(all);
    if scale >= 0 {
        value *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Canonical text form: `"n"` or `"n/d"`.
pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact conversion of a finite `f64`.
pub fn q_from_f64(v: f64) -> Result<Q> {
    Q::from_float(v).ok_or_else(|| Error::Parse(format!("non-finite value {v}")))
}

/// Serde adapter storing a [`Q`] as its canonical string; numbers are also accepted on input.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        from_json(&raw).map_err(serde::de::Error::custom)
    }

    pub(crate) fn from_json(v: &serde_json::Value) -> Result<Q> {
        match v {
            serde_json::Value::String(s) => parse_q(s),
            serde_json::Value::Number(n) => parse_q(&n.to_string()),
            other => Err(Error::Parse(format!("expected a number, got {other}"))),
        }
    }
}

/// A real number extended by `-inf` and `+inf`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub enum ExtReal<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Scalar> ExtReal<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v.to_f64(),
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// Tolerance-aware strict order.
    pub fn lt_strict(&self, other: &Self) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.lt_strict(b),
            _ => self.rank() < other.rank(),
        }
    }

    fn rank(&self) -> i8 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::Finite(_) => 0,
            ExtReal::PosInf => 1,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self < other {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl<T> From<T> for ExtReal<T> {
    fn from(v: T) -> Self {
        ExtReal::Finite(v)
    }
}

impl ExtReal<Q> {
    /// Canonical text form, with `"+inf"` and `"-inf"` for the infinities.
    pub fn to_exact_string(&self) -> String {
        match self {
            ExtReal::NegInf => "-inf".into(),
            ExtReal::Finite(v) => fmt_q(v),
            ExtReal::PosInf => "+inf".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "+inf" | "inf" | "+infinity" | "infinity" => Ok(ExtReal::PosInf),
            "-inf" | "-infinity" => Ok(ExtReal::NegInf),
            other => parse_q(other).map(ExtReal::Finite),
        }
    }

    pub fn approx(&self) -> ExtReal<f64> {
        match self {
            ExtReal::NegInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(q_to_f64(v)),
            ExtReal::PosInf => ExtReal::PosInf,
        }
    }
}

impl fmt::Display for ExtReal<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl Serialize for ExtReal<Q> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_exact_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal<Q> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        match &raw {
            serde_json::Value::String(s) => ExtReal::parse(s).map_err(serde::de::Error::custom),
            other => serde_q::from_json(other)
                .map(ExtReal::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// Sign of a rational as an ordering against zero.
pub(crate) fn sign(v: &Q) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_q("-3.5").unwrap(), q(-7, 2));
        assert_eq!(parse_q("10/3").unwrap(), q(10, 3));
        assert_eq!(parse_q("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_q("+2").unwrap(), qi(2));
        assert_eq!(parse_q(".25").unwrap(), q(1, 4));
        assert!(parse_q("abc").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("-").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for v in [q(10, 3), qi(-4), q(-7, 2)] {
            assert_eq!(parse_q(&fmt_q(&v)).unwrap(), v);
        }
    }

    #[test]
    fn ext_real_order() {
        let a: ExtReal<Q> = ExtReal::Finite(qi(3));
        assert!(ExtReal::NegInf < a);
        assert!(a < ExtReal::PosInf);
        assert!(a.lt_strict(&ExtReal::PosInf));
        assert!(!ExtReal::<Q>::PosInf.lt_strict(&ExtReal::PosInf));
    }

    #[test]
    fn float_ties_are_not_strict() {
        assert!(!1.0f64.lt_strict(&(1.0 + 1e-14)));
        assert!(1.0f64.lt_strict(&1.001));
        assert!(0.1f64.near(&(0.3 - 0.2)));
    }
}
