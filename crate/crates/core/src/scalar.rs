//! Numeric backends. Every probability computation in the crate is generic
//! over [`Scalar`], which is implemented for `f32`, `f64` and exact
//! big rationals.

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Scalar type used for probabilities in type distributions, flows and plans.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Send + Sync + 'static {
    /// True for arithmetic without rounding.
    const EXACT: bool;
    /// Backend label recorded in plan headers.
    const BACKEND: &'static str;
    /// Slack allowed when re-checking stored values against recomputed ones.
    const TOLERANCE: f64;

    fn from_ratio(num: &BigUint, den: &BigUint) -> Self;
    fn from_param(p: &Param) -> Result<Self>;
    fn to_f64(&self) -> f64;

    /// Acceptance probability counts as terminal (`F = 1`).
    fn is_terminal(accept: &Self) -> bool;
    /// Clamp a computed probability back into `[0, 1]`. Identity for exact arithmetic.
    fn clamp_unit(self) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

macro_rules! float_scalar {
    ($t:ty, $name:literal, $terminal:expr, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            const BACKEND: &'static str = $name;
            const TOLERANCE: f64 = $tol;

            fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
                ratio_to_f64(num, den) as $t
            }

            fn from_param(p: &Param) -> Result<Self> {
                Ok(p.to_f64() as $t)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_terminal(accept: &Self) -> bool {
                *accept >= 1.0 - $terminal
            }

            fn clamp_unit(self) -> Self {
                self.clamp(0.0, 1.0)
            }

            fn to_json(&self) -> Value {
                serde_json::Number::from_f64(*self as f64)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }

            fn from_json(v: &Value) -> Result<Self> {
                v.as_f64()
                    .map(|x| x as $t)
                    .ok_or_else(|| Error::InvalidParameter(format!("expected a number, got {v}")))
            }
        }
    };
}

float_scalar!(f64, "f64", 1e-12, 1e-9);
float_scalar!(f32, "f32", 1e-6, 1e-4);

impl Scalar for BigRational {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";
    const TOLERANCE: f64 = 0.0;

    fn from_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn from_param(p: &Param) -> Result<Self> {
        match p {
            Param::Rational(r) => Ok(r.clone()),
            Param::Float(x) => Err(Error::InvalidParameter(format!(
                "exact backend needs a rational parameter, got {x}"
            ))),
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_terminal(accept: &Self) -> bool {
        accept.is_one()
    }

    fn clamp_unit(self) -> Self {
        self
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_u64() || n.is_i64() => {
                Ok(BigRational::from_integer(BigInt::from(n.as_i64().unwrap_or(0))))
            }
            _ => Err(Error::InvalidParameter(format!("expected \"num/den\", got {v}"))),
        }
    }
}

/// Nearest `f64` to `num / den`, robust to operands beyond the `f64` range.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let r = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
    ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)
}

/// `log2` of a big unsigned integer, accurate for values far beyond `f64::MAX`.
pub fn log2_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

/// Channel parameter: exact rational or binary64.
#[derive(Clone, PartialEq)]
pub enum Param {
    Rational(BigRational),
    Float(f64),
}

impl Param {
    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Rational(r) => ToPrimitive::to_f64(r).unwrap_or(f64::NAN),
            Param::Float(x) => *x,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Param::Rational(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Param::Rational(r) => r.to_json(),
            Param::Float(x) => x.to_json(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(_) => Ok(Param::Float(f64::from_json(v)?)),
            _ => Err(Error::InvalidParameter(format!("bad parameter {v}"))),
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        match self {
            Param::Rational(r) => !r.is_negative() && *r <= BigRational::one(),
            Param::Float(x) => (0.0..=1.0).contains(x),
        }
    }
}

impl Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Param::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Param::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `"11/100"`, `"3"` or a plain decimal such as `"0.11"`; all three
/// forms are represented exactly.
impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Param::Rational)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse `{s}` as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str_radix(n.trim(), 10).map_err(|_| bad())?;
        let d = BigInt::from_str_radix(d.trim(), 10).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str_radix(&digits, 10).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(BigRational::new(n, d));
    }
    let n = BigInt::from_str_radix(s, 10).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}
