//! Fixed-precision decimals for report metrics.
//!
//! Percentages and ratios are computed from exact integer ratios and rounded
//! half-up (away from zero) once, at the precision they are reported at. The
//! JSON form keeps trailing zeros, so `2.80` stays `2.80` on the wire.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{self, Serializer};
use serde::{Deserialize, Serialize};

/// A signed decimal with `P` fractional digits, stored as a scaled integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fixed<const P: u32>(i64);

/// One decimal place (percentages).
pub type Fixed1 = Fixed<1>;
/// Two decimal places (reuse factors, depth value).
pub type Fixed2 = Fixed<2>;
/// Four decimal places (depth factors and weights).
pub type Fixed4 = Fixed<4>;

impl<const P: u32> Fixed<P> {
    const SCALE: i64 = 10i64.pow(P);

    pub const fn from_scaled(scaled: i64) -> Self {
        Fixed(scaled)
    }

    pub fn from_int(value: i64) -> Self {
        Fixed(value * Self::SCALE)
    }

    pub const fn scaled(self) -> i64 {
        self.0
    }

    /// `num / den` rounded half away from zero. A zero denominator yields zero.
    pub fn from_ratio(num: i128, den: i128) -> Self {
        if den == 0 {
            return Fixed(0);
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let scaled = num * Self::SCALE as i128;
        let q = (2 * scaled.abs() + den) / (2 * den);
        Fixed((if scaled < 0 { -q } else { q }) as i64)
    }

    /// `num / den × 100` rounded half away from zero.
    pub fn percent(num: u64, den: u64) -> Self {
        Self::from_ratio(num as i128 * 100, den as i128)
    }

    /// Nearest representable value to `x`, half away from zero.
    pub fn from_f64(x: f64) -> Self {
        Fixed((x * Self::SCALE as f64).round() as i64)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }
}

impl<const P: u32> fmt::Display for Fixed<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let scale = Self::SCALE as u64;
        if P == 0 {
            write!(f, "{sign}{abs}")
        } else {
            write!(
                f,
                "{sign}{}.{:0width$}",
                abs / scale,
                abs % scale,
                width = P as usize
            )
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid decimal literal {0:?}")]
pub struct ParseFixedError(String);

impl<const P: u32> FromStr for Fixed<P> {
    type Err = ParseFixedError;

    /// Parses a plain decimal literal; digits beyond `P` places are rounded.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseFixedError(s.to_string());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let den = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(err)?;
        let num: i128 = digits.parse().map_err(|_| err())?;
        Ok(Self::from_ratio(if neg { -num } else { num }, den))
    }
}

impl<const P: u32> Serialize for Fixed<P> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.to_string()).map_err(ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de, const P: u32> Deserialize<'de> for Fixed<P> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        n.to_string().parse().map_err(de::Error::custom)
    }
}
