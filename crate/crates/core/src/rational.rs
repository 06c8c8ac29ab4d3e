//! Arbitrary-precision rational numbers.
//!
//! [`Rat`] wraps [`num_rational::BigRational`], kept in lowest terms with a
//! positive denominator. The textual form is `"n"` for integers and `"a/b"`
//! otherwise; serde uses the same strings. No float ever appears in this
//! crate, so equality checks downstream are exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidRational {
                input: format!("{numer}/{denom}"),
            });
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    /// Assembles a value already in canonical form: lowest terms, positive
    /// denominator, zero written as 0/1. Pure powers and power-differences
    /// of a reduced fraction are canonical by construction, and skipping
    /// the gcd pass here is what makes bulk transforms affordable. Callers
    /// own the invariant; equality on `Rat` is structural.
    pub(crate) fn from_reduced_parts(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        debug_assert!(!numer.is_zero() || denom.is_one());
        Rat(BigRational::new_raw(numer, denom))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Integer power; negative exponents invert. Panics on `0^-n`, which the
    /// nonzero-q guards upstream make unreachable.
    pub fn pow(&self, exp: i64) -> Self {
        let e = i32::try_from(exp).expect("exponent fits i32");
        Rat(Pow::pow(&self.0, e))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidRational {
                input: "1/0".into(),
            });
        }
        Ok(Rat(self.0.recip()))
    }

    /// The value as a u64 if it is an integer in range.
    pub fn to_u64(&self) -> Option<u64> {
        if !self.is_integer() {
            return None;
        }
        self.0.numer().to_u64()
    }

    /// Exact decimal expansion rounded (half away from zero) to `places`
    /// fractional digits. Used only for display; the crate computes with
    /// rationals throughout.
    pub fn to_decimal_string(&self, places: usize) -> String {
        let numer = self.0.numer().abs();
        let denom = self.0.denom().clone();
        let scale = BigInt::from(10u32).pow(places as u32);
        let (mut quot, rem) = (numer * &scale).div_rem(&denom);
        if rem * 2 >= denom {
            quot += 1;
        }
        let sign = if self.is_negative() && !quot.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            return format!("{sign}{quot}");
        }
        let digits = format!("{:0>width$}", quot.to_string(), width = places + 1);
        let split = digits.len() - places;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational { input: s.into() };
        let body = s.trim();
        match body.split_once('/') {
            Some((n, d)) => {
                let numer = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(numer, denom)))
            }
            None => {
                let numer = BigInt::from_str(body).map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(numer)))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<usize> for Rat {
    fn from(n: usize) -> Self {
        Rat::from_integer(n as u64)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }

        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }

        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }

        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

macro_rules! assignop {
    ($trait:ident, $method:ident, $op:ident, $opmethod:ident) => {
        impl $trait for Rat {
            fn $method(&mut self, rhs: Rat) {
                let lhs = std::mem::replace(self, Rat::zero());
                *self = $op::$opmethod(lhs, rhs);
            }
        }

        impl $trait<&Rat> for Rat {
            fn $method(&mut self, rhs: &Rat) {
                let lhs = std::mem::replace(self, Rat::zero());
                *self = $op::$opmethod(lhs, rhs);
            }
        }
    };
}

assignop!(AddAssign, add_assign, Add, add);
assignop!(SubAssign, sub_assign, Sub, sub);
assignop!(MulAssign, mul_assign, Mul, mul);
assignop!(DivAssign, div_assign, Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}
