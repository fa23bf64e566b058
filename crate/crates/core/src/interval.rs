//! Closed intervals with exact endpoints, used to certify comparisons that
//! involve irrational quantities such as `(p^{1/d} + q^{1/d})^d`.
//!
//! Everything here is exact: irrational values are enclosed between dyadic
//! rationals whose spacing is `2^-bits`, so "outward rounding" is just
//! choosing the floor and ceiling of integer roots.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// Precision (bits) used when no override is given.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Reads `DILATE_PRECISION_BITS`, falling back to the default.
pub fn default_precision_bits() -> u32 {
    std::env::var("DILATE_PRECISION_BITS")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&b| b >= 16)
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar + PartialOrd> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Every point is `>= 0`.
    pub fn certainly_nonnegative(&self) -> bool {
        self.lo >= T::zero()
    }

    /// Every point is `< 0`.
    pub fn certainly_negative(&self) -> bool {
        self.hi < T::zero()
    }

    /// Every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &T) -> Self {
        let a = self.lo.clone() * k.clone();
        let b = self.hi.clone() * k.clone();
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Interval::point(T::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<T: Scalar + PartialOrd> Add for &Interval<T> {
    type Output = Interval<T>;
    fn add(self, rhs: &Interval<T>) -> Interval<T> {
        Interval {
            lo: self.lo.clone() + rhs.lo.clone(),
            hi: self.hi.clone() + rhs.hi.clone(),
        }
    }
}

impl<T: Scalar + PartialOrd> Sub for &Interval<T> {
    type Output = Interval<T>;
    fn sub(self, rhs: &Interval<T>) -> Interval<T> {
        Interval {
            lo: self.lo.clone() - rhs.hi.clone(),
            hi: self.hi.clone() - rhs.lo.clone(),
        }
    }
}

impl<T: Scalar + PartialOrd> Mul for &Interval<T> {
    type Output = Interval<T>;
    fn mul(self, rhs: &Interval<T>) -> Interval<T> {
        let cands = [
            self.lo.clone() * rhs.lo.clone(),
            self.lo.clone() * rhs.hi.clone(),
            self.hi.clone() * rhs.lo.clone(),
            self.hi.clone() * rhs.hi.clone(),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl Interval<BigRational> {
    pub fn from_int(x: i64) -> Self {
        Interval::point(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Endpoints as decimal strings with `digits` fractional digits, the lower
    /// one rounded down and the upper one rounded up.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        (decimal_floor(&self.lo, digits), decimal_ceil(&self.hi, digits))
    }

    /// Decimal endpoints at the precision `bits` supports.
    pub fn to_decimal_strings_bits(&self, bits: u32) -> (String, String) {
        self.to_decimal_strings(decimal_digits_for_bits(bits))
    }
}

impl fmt::Display for Interval<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_strings(12);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Exact rational as `"n/d"` (or `"n"` when integral).
pub fn serialize_rational<S: Serializer>(x: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&x.to_string())
}

/// Serialized as `["lo", "hi"]`, decimal strings at the default precision.
impl Serialize for Interval<BigRational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.to_decimal_strings_bits(default_precision_bits());
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&lo)?;
        seq.serialize_element(&hi)?;
        seq.end()
    }
}

pub fn decimal_digits_for_bits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

fn pow10(digits: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), digits)
}

fn format_scaled(n: &BigInt, digits: usize) -> String {
    let sign = if n.is_negative() { "-" } else { "" };
    let a = n.abs();
    let s = pow10(digits);
    let (int, frac) = a.div_rem(&s);
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

pub fn decimal_floor(x: &BigRational, digits: usize) -> String {
    let scaled = (x * BigRational::from_integer(pow10(digits))).floor().to_integer();
    format_scaled(&scaled, digits)
}

pub fn decimal_ceil(x: &BigRational, digits: usize) -> String {
    let scaled = (x * BigRational::from_integer(pow10(digits))).ceil().to_integer();
    format_scaled(&scaled, digits)
}

fn dyadic(n: BigInt, bits: u32) -> BigRational {
    BigRational::new(n, BigInt::one() << bits)
}

/// Encloses `x^{1/n}` for `x >= 0` between consecutive multiples of
/// `2^-bits`; exact roots come back as point intervals.
pub fn nth_root_enclosure(x: &BigRational, n: u32, bits: u32) -> Interval<BigRational> {
    assert!(!x.is_negative(), "root of a negative number");
    assert!(n >= 1);
    if n == 1 {
        return Interval::point(x.clone());
    }
    if let Some(r) = exact_nth_root(x, n) {
        return Interval::point(r);
    }
    // floor(x * 2^{n bits}) = N, r = floor(N^{1/n}) gives r <= 2^bits x^{1/n} < r + 1
    let scaled = (x * BigRational::from_integer(BigInt::one() << (bits * n))).floor().to_integer();
    let r = scaled.to_biguint().expect("nonnegative").nth_root(n);
    let r = BigInt::from(r);
    Interval::new(dyadic(r.clone(), bits), dyadic(r + 1, bits))
}

/// `Some(r)` when `x = r^n` for rational `r >= 0`.
pub fn exact_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    let num = x.numer().to_biguint()?;
    let den = x.denom().to_biguint()?;
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    (num_traits::pow(rn.clone(), n as usize) == num && num_traits::pow(rd.clone(), n as usize) == den)
        .then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}

pub fn sqrt_enclosure(x: &BigRational, bits: u32) -> Interval<BigRational> {
    nth_root_enclosure(x, 2, bits)
}

/// Upper bound on `sqrt(x)` within `2^-bits`.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    sqrt_enclosure(x, bits).hi
}

/// `(p^{1/d} + q^{1/d})^d` enclosed with root spacing `2^-bits`; a point
/// interval whenever the value is rational.
pub fn bm_constant(p: &BigInt, q: &BigInt, d: u32, bits: u32) -> Interval<BigRational> {
    if let Some(exact) = exact_bm_constant(p, q, d) {
        return Interval::point(exact);
    }
    let pr = nth_root_enclosure(&BigRational::from_integer(p.clone()), d, bits);
    let qr = nth_root_enclosure(&BigRational::from_integer(q.clone()), d, bits);
    (&pr + &qr).powi(d)
}

/// Whether `a` and `b` are related by a rational `d`-th power ratio, in
/// which case `(a^{1/d} + b^{1/d})^d` is rational and returned exactly.
pub fn exact_bm_constant(a: &BigInt, b: &BigInt, d: u32) -> Option<BigRational> {
    if a.is_zero() || b.is_zero() {
        let s = a + b;
        return Some(BigRational::from_integer(s));
    }
    let ratio = BigRational::new(a.clone(), b.clone());
    let t = exact_nth_root(&ratio, d)?;
    let one_plus = t + BigRational::one();
    Some(BigRational::from_integer(b.clone()) * num_traits::pow(one_plus, d as usize))
}

/// `log2` of a positive rational, roughly; used to pick working precision.
pub fn approx_log2(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sqrt2_enclosure() {
        let i = nth_root_enclosure(&rat(2, 1), 2, 64);
        assert!(i.lo() * i.lo() <= rat(2, 1));
        assert!(i.hi() * i.hi() >= rat(2, 1));
        assert_eq!(i.width(), dyadic(BigInt::one(), 64));
    }

    #[test]
    fn exact_roots_are_points() {
        assert!(nth_root_enclosure(&rat(27, 8), 3, 32).is_point());
        assert_eq!(exact_nth_root(&rat(27, 8), 3), Some(rat(3, 2)));
        assert_eq!(exact_nth_root(&rat(2, 1), 2), None);
    }

    #[test]
    fn bm_constant_values() {
        let one = BigInt::one();
        assert_eq!(bm_constant(&one, &one, 3, 64), Interval::point(rat(8, 1)));
        let two = BigInt::from(2);
        assert_eq!(bm_constant(&two, &two, 2, 64), Interval::point(rat(8, 1)));
        let s = bm_constant(&one, &two, 2, 128);
        let (lo, hi) = s.to_f64_pair();
        assert!(lo <= 5.828427124746190 + 1e-15 && hi >= 5.828427124746190 - 1e-15);
        assert!(s.width() < rat(1, 1 << 53));
    }

    #[test]
    fn exact_bm_constant_detects_rational_cases() {
        assert_eq!(exact_bm_constant(&BigInt::from(4), &BigInt::from(4), 2), Some(rat(16, 1)));
        assert_eq!(exact_bm_constant(&BigInt::from(8), &BigInt::from(2), 2), Some(rat(18, 1)));
        assert_eq!(exact_bm_constant(&BigInt::from(3), &BigInt::from(2), 2), None);
    }

    #[test]
    fn decimal_rounding_is_outward() {
        let i = Interval::new(rat(-1, 3), rat(2, 3));
        assert_eq!(i.to_decimal_strings(3), ("-0.334".to_string(), "0.667".to_string()));
        let p = Interval::point(rat(5, 1));
        assert_eq!(p.to_decimal_strings(2), ("5.00".to_string(), "5.00".to_string()));
    }

    #[test]
    fn interval_arithmetic() {
        let a = Interval::new(rat(-1, 1), rat(2, 1));
        let b = Interval::new(rat(3, 1), rat(4, 1));
        assert_eq!(&a * &b, Interval::new(rat(-4, 1), rat(8, 1)));
        assert_eq!(&a - &b, Interval::new(rat(-5, 1), rat(-1, 1)));
        assert!(b.certainly_nonnegative());
        assert!(!a.certainly_nonnegative());
    }
}
