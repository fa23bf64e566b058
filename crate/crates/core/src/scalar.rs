//! Scalar traits the generic linear algebra is written against.
//!
//! [`Scalar`] is any commutative ring element we can clone and compare
//! (integers, rationals, floats). [`Field`] marks scalars whose `/` is true
//! division, which elimination-based inverses need. Exact instantiations
//! (`BigInt`, `BigRational`) are what the rest of the crate uses; `i64` and
//! `f64` work for quick experiments and cross-checks.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> {}

/// Scalars where `a / b` is exact division by any nonzero `b`.
pub trait Field: Scalar {}

impl Field for BigRational {}
impl Field for f64 {}
impl Field for f32 {}

/// Lossless embedding of the integers, used to lift integer data into a
/// scalar type.
pub trait FromBigInt: Scalar {
    fn from_bigint(x: &BigInt) -> Self;
}

impl FromBigInt for BigInt {
    fn from_bigint(x: &BigInt) -> Self {
        x.clone()
    }
}

impl FromBigInt for BigRational {
    fn from_bigint(x: &BigInt) -> Self {
        BigRational::from_integer(x.clone())
    }
}

impl FromBigInt for f64 {
    fn from_bigint(x: &BigInt) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromBigInt for i64 {
    fn from_bigint(x: &BigInt) -> Self {
        x.to_i64().expect("integer does not fit in i64")
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Returns the integer value of `x` or a `NonIntegral` error.
pub fn rat_to_int(x: &BigRational) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::NonIntegral(x.to_string()))
    }
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| {
        if x.is_zero() {
            acc
        } else {
            acc.lcm(x)
        }
    })
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Floor division for `BigInt`, rounding toward negative infinity.
pub fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}
