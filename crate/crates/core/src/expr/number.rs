use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};

/// A numeric literal. Rationals stay exact until evaluation; arithmetic that
/// would overflow `i64` falls back to an IEEE double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Number {
    Rational(Ratio<i64>),
    Real(f64),
}

impl Number {
    pub fn int(v: i64) -> Number {
        Number::Rational(Ratio::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Number {
        Number::Rational(Ratio::new(num, den))
    }

    /// Integral doubles become exact integers; anything else stays real.
    pub fn from_f64(v: f64) -> Number {
        if v.is_finite() && v.fract() == 0.0 && v.abs() < 9.007_199_254_740_992e15 {
            Number::int(v as i64)
        } else {
            Number::Real(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Number::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            Number::Real(v) => v,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Number::Rational(r) => r.is_zero(),
            Number::Real(v) => v == 0.0,
        }
    }

    pub fn is_one(self) -> bool {
        match self {
            Number::Rational(r) => r.is_one(),
            Number::Real(v) => v == 1.0,
        }
    }

    pub fn is_negative(self) -> bool {
        match self {
            Number::Rational(r) => r.is_negative(),
            Number::Real(v) => v < 0.0,
        }
    }

    /// The integer value, when this is an exact integer.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Number::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn as_ratio(self) -> Option<Ratio<i64>> {
        match self {
            Number::Rational(r) => Some(r),
            Number::Real(_) => None,
        }
    }

    /// Reciprocal; `None` for zero.
    pub fn recip(self) -> Option<Number> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Number::Rational(r) if *r.numer() != i64::MIN => Number::Rational(r.recip()),
            other => Number::Real(1.0 / other.to_f64()),
        })
    }

    /// Exact integer power when it fits; `None` otherwise.
    pub fn checked_powi(self, k: i64) -> Option<Number> {
        let r = self.as_ratio()?;
        if k.unsigned_abs() > 64 || (r.is_zero() && k < 0) {
            return None;
        }
        let mut acc = Ratio::<i64>::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.checked_mul(&r)?;
        }
        if k < 0 {
            if *acc.numer() == i64::MIN {
                return None;
            }
            acc = acc.recip();
        }
        Some(Number::Rational(acc))
    }

    pub fn abs(self) -> Number {
        if self.is_negative() {
            -self
        } else {
            self
        }
    }

    pub(crate) fn precedence(self) -> u8 {
        match self {
            Number::Rational(r) if !r.is_integer() => 2,
            n if n.is_negative() => 4,
            _ => 5,
        }
    }
}

/// Exact when both sides are rational and the result fits; otherwise IEEE.
impl Add for Number {
    type Output = Number;

    fn add(self, other: Number) -> Number {
        if let (Number::Rational(a), Number::Rational(b)) = (self, other) {
            if let Some(r) = a.checked_add(&b) {
                return Number::Rational(r);
            }
        }
        Number::Real(self.to_f64() + other.to_f64())
    }
}

impl Mul for Number {
    type Output = Number;

    fn mul(self, other: Number) -> Number {
        if let (Number::Rational(a), Number::Rational(b)) = (self, other) {
            if let Some(r) = a.checked_mul(&b) {
                return Number::Rational(r);
            }
        }
        Number::Real(self.to_f64() * other.to_f64())
    }
}

impl Neg for Number {
    type Output = Number;

    fn neg(self) -> Number {
        match self {
            Number::Rational(r) if *r.numer() != i64::MIN => Number::Rational(-r),
            other => Number::Real(-other.to_f64()),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Number::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Number::Real(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for Number {
    fn from(v: i64) -> Number {
        Number::int(v)
    }
}
