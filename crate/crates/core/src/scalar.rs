//! Scalar fields used throughout the crate.
//!
//! Every construction is carried out over exact rationals ([`Q`]) and can be
//! converted to `f64` for float-mode work. Code that runs in both modes is
//! generic over [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar.
pub type Q = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn from_q(q: &Q) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact zero test for rationals, `|x| <= tol` for floats.
    fn near_zero(&self, tol: f64) -> bool;

    fn is_positive(&self) -> bool;

    /// Serialized form: `"p/q"` strings for rationals, plain numbers for floats.
    fn to_json(&self) -> serde_json::Value;

    fn from_i64(v: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(v)))
    }
}

impl Scalar for Q {
    const EXACT: bool = true;

    fn from_q(q: &Q) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_q(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_q(q: &Q) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near_zero(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(*self)
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite float.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A parsed scalar literal. `decimal` is set when the literal used a decimal
/// point or exponent, which forces float mode on the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub value: Q,
    pub decimal: bool,
}

/// Parse `p`, `p/q` or a decimal such as `1.0851961` / `2.5e-3` into an
/// exact rational.
pub fn parse_literal(s: &str) -> Result<Literal, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Literal { value: Q::new(n, d), decimal: false });
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Literal { value: Q::from_integer(n), decimal: false });
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
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
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = Q::from_integer(BigInt::from(10));
    let mut value = Q::from_integer(all);
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    if neg {
        value = -value;
    }
    Ok(Literal { value, decimal: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_literal("11/9").unwrap().value, q(11, 9));
        assert_eq!(parse_literal("-3").unwrap().value, qi(-3));
        let d = parse_literal("1.0851961").unwrap();
        assert!(d.decimal);
        assert_eq!(d.value, q(10851961, 10_000_000));
        assert_eq!(parse_literal("2.5e-3").unwrap().value, q(1, 400));
        assert_eq!(parse_literal(".5").unwrap().value, q(1, 2));
        assert!(parse_literal("1/0").is_err());
        assert!(parse_literal("abc").is_err());
        assert!(parse_literal("").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_q(&q(-4, 6)), "-2/3");
        assert_eq!(format_q(&qi(5)), "5");
    }
}
