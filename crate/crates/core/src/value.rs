//! Scalars that are either exact rationals or floating-point approximations.
//!
//! Unweighted (more generally, integer-weighted) graphs give integer walk
//! counts and degree sums, so every inequality on them can be decided
//! exactly. Weighted graphs and spectral quantities fall back to `f64`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest magnitude for which every integer is representable in `f64`.
const F64_EXACT_INT: f64 = 9_007_199_254_740_992.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn int(v: i128) -> Self {
        Value::Exact(Rational::from_integer(v))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            Value::Exact(r) => Some(*r),
            Value::Approx(_) => None,
        }
    }

    /// `self >= 0`, exactly for rationals, within `-tol` otherwise.
    pub fn nonnegative(&self, tol: f64) -> bool {
        match self {
            Value::Exact(r) => !r.is_negative(),
            Value::Approx(x) => *x >= -tol,
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(x) => x.abs() <= tol,
        }
    }

    pub fn checked_sub(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => {
                a.checked_sub(b).map(Value::Exact).ok_or(Error::Overflow)
            }
            _ => Ok(Value::Approx(self.to_f64() - other.to_f64())),
        }
    }

    pub fn checked_mul(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => {
                a.checked_mul(b).map(Value::Exact).ok_or(Error::Overflow)
            }
            _ => Ok(Value::Approx(self.to_f64() * other.to_f64())),
        }
    }

    pub fn checked_div(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => {
                if b.is_zero() {
                    return Err(Error::invalid("division by zero"));
                }
                a.checked_div(b).map(Value::Exact).ok_or(Error::Overflow)
            }
            _ => Ok(Value::Approx(self.to_f64() / other.to_f64())),
        }
    }

    pub fn min(self, other: Value) -> Value {
        let less = match (&self, &other) {
            (Value::Exact(a), Value::Exact(b)) => a < b,
            _ => self.to_f64() < other.to_f64(),
        };
        if less {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx(x) => write!(f, "{x}"),
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // i128 -> f64 rounds each side once; good enough for reporting.
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// The integer an `f64` holds exactly, if it holds one.
pub fn exact_int(x: f64) -> Option<i128> {
    if x.is_finite() && x.fract() == 0.0 && x.abs() <= F64_EXACT_INT {
        Some(x as i128)
    } else {
        None
    }
}

/// Integer images of a slice of floats, or `None` if any entry is fractional.
pub fn exact_ints(xs: &[f64]) -> Option<Vec<i128>> {
    xs.iter().map(|&x| exact_int(x)).collect()
}

pub(crate) fn checked_dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        i128::checked_mul(*x, *y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

pub(crate) fn checked_sum(a: &[i128]) -> Result<i128> {
    a.iter()
        .try_fold(0i128, |acc, x| acc.checked_add(*x))
        .ok_or(Error::Overflow)
}

pub(crate) fn ratio(numer: i128, denom: i128) -> Result<Rational> {
    if denom == 0 {
        return Err(Error::invalid("zero denominator"));
    }
    // Ratio::new reduces via gcd and cannot overflow except for i128::MIN.
    if numer == i128::MIN || denom == i128::MIN {
        return Err(Error::Overflow);
    }
    Ok(Rational::new(numer, denom))
}


#[derive(Serialize, Deserialize)]
struct ValueRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    value: f64,
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ValueRepr {
            exact: self.exact().map(|r| r.to_string()),
            value: self.to_f64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ValueRepr::deserialize(d)?;
        match repr.exact {
            Some(text) => text
                .parse::<Rational>()
                .map(Value::Exact)
                .map_err(|e| serde::de::Error::custom(format!("bad rational {text:?}: {e}"))),
            None => Ok(Value::Approx(repr.value)),
        }
    }
}
