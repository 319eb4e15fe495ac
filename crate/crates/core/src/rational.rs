//! Exact arbitrary-precision fractions.
//!
//! Thin newtype over [`num_rational::BigRational`] so that gap values carry a
//! stable serialized form (`{"num": "..", "den": ".."}` with decimal strings)
//! and a small, explicit API.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`. Panics when `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| err())?;
        let den = BigInt::from_str(den).map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(num, den))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let num = BigInt::from_str(&w.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&w.den).map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}
