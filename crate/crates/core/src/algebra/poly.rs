use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{gcd_all, lcm_all, Field, FromBigInt, Scalar};

/// Dense polynomial, `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    /// `x`
    pub fn x() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        let n = m.dim();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Polynomial::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Polynomial<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * c.clone();
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Polynomial::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<T: FromBigInt> Polynomial<T> {
    pub fn from_int(p: &Polynomial<BigInt>) -> Self {
        p.map(T::from_bigint)
    }
}

impl Polynomial<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        gcd_all(self.coeffs.iter())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Polynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn to_rat(&self) -> Polynomial<BigRational> {
        Polynomial::from_int(self)
    }

    /// Euclidean 2-norm squared.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Exact division in `Z[x]`; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Polynomial::new(quot))
        } else {
            None
        }
    }
}

/// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free
/// recurrence, so it runs over any commutative ring. The result is monic.
pub fn char_poly<T: Scalar>(m: &Matrix<T>) -> Polynomial<T> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    // coefficient vectors are kept highest degree first while iterating
    let mut p: Vec<T> = vec![T::one()];
    for k in (0..n).rev() {
        let size = n - k;
        let a = m[(k, k)].clone();
        let r: Vec<T> = (k + 1..n).map(|j| m[(k, j)].clone()).collect();
        let mut v: Vec<T> = (k + 1..n).map(|i| m[(i, k)].clone()).collect();
        let mut col = Vec::with_capacity(size + 1);
        col.push(T::one());
        col.push(-a);
        for step in 0..size.saturating_sub(1) {
            let dot = r
                .iter()
                .zip(&v)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            col.push(-dot);
            if step + 1 < size - 1 {
                v = (k + 1..n)
                    .map(|i| {
                        (k + 1..n)
                            .zip(&v)
                            .fold(T::zero(), |acc, (j, y)| acc + m[(i, j)].clone() * y.clone())
                    })
                    .collect();
            }
        }
        let mut next = vec![T::zero(); size + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                *slot = slot.clone() + col[i - j].clone() * pj.clone();
            }
        }
        p = next;
    }
    p.reverse();
    Polynomial::new(p)
}

/// Least `c >= 1` with `c * p` in `Z[x]`: the lcm of the coefficient
/// denominators.
pub fn minimal_denominator(p: &Polynomial<BigRational>) -> Result<BigInt> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(lcm_all(p.coeffs().iter().map(|c| c.denom())))
}

/// Scales a nonzero rational polynomial to a primitive integer polynomial
/// with positive leading coefficient.
pub fn primitive_integer_clearing(p: &Polynomial<BigRational>) -> Result<Polynomial<BigInt>> {
    let c = minimal_denominator(p)?;
    let ints = Polynomial::new(
        p.coeffs()
            .iter()
            .map(|x| (x * BigRational::from_integer(c.clone())).to_integer())
            .collect(),
    );
    Ok(ints.primitive_part())
}

/// Parses coefficients listed from the constant term upward: `-2,0,1` is
/// `x^2 - 2`.
pub fn parse_polynomial<T: Scalar + FromStr>(s: &str) -> Result<Polynomial<T>> {
    let coeffs = s
        .trim()
        .split(',')
        .map(|e| {
            let e = e.trim();
            e.parse::<T>()
                .map_err(|_| Error::Parse(format!("bad polynomial coefficient {e:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

impl<T: Scalar + FromStr> FromStr for Polynomial<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Comma-separated coefficients, constant term first (the parse format).
impl<T: fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{IntPolynomial, RatMatrix, RatPolynomial};

    fn ratpoly(c: &[(i64, i64)]) -> RatPolynomial {
        Polynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn char_poly_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(char_poly(&id), ratpoly(&[(1, 1), (-2, 1), (1, 1)]));
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(char_poly(&rot), ratpoly(&[(1, 1), (0, 1), (1, 1)]));
        let m: RatMatrix = "0,2;1/2,-1/2".parse().unwrap();
        assert_eq!(char_poly(&m), ratpoly(&[(-1, 1), (1, 2), (1, 1)]));
    }

    #[test]
    fn char_poly_small_sizes() {
        let one = RatMatrix::from_i64_rows(&[&[5]]).unwrap();
        assert_eq!(char_poly(&one), ratpoly(&[(-5, 1), (1, 1)]));
        // companion matrix of x^3 - 2x + 7 recovers the polynomial
        let c = RatMatrix::from_i64_rows(&[&[0, 0, -7], &[1, 0, 2], &[0, 1, 0]]).unwrap();
        assert_eq!(char_poly(&c), ratpoly(&[(7, 1), (-2, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn minimal_denominator_examples() {
        assert_eq!(minimal_denominator(&ratpoly(&[(1, 1), (0, 1), (1, 1)])).unwrap(), BigInt::from(1));
        assert_eq!(minimal_denominator(&ratpoly(&[(-1, 1), (1, 2), (1, 1)])).unwrap(), BigInt::from(2));
        assert_eq!(minimal_denominator(&ratpoly(&[(1, 4), (1, 6), (1, 1)])).unwrap(), BigInt::from(12));
        assert_eq!(minimal_denominator(&RatPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn clearing_to_primitive() {
        let p = ratpoly(&[(-1, 1), (1, 2), (1, 1)]);
        assert_eq!(primitive_integer_clearing(&p).unwrap(), IntPolynomial::from_i64(&[-2, 1, 2]));
        let q = ratpoly(&[(-2, 3), (0, 1), (-4, 3)]);
        assert_eq!(primitive_integer_clearing(&q).unwrap(), IntPolynomial::from_i64(&[1, 0, 2]));
    }

    #[test]
    fn exact_division() {
        let f = IntPolynomial::from_i64(&[4, 0, 0, 0, 1]);
        let g = IntPolynomial::from_i64(&[2, 2, 1]);
        assert_eq!(f.exact_div(&g), Some(IntPolynomial::from_i64(&[2, -2, 1])));
        assert_eq!(f.exact_div(&IntPolynomial::from_i64(&[1, 1])), None);
    }

    #[test]
    fn rational_gcd() {
        let a = IntPolynomial::from_i64(&[-1, 0, 1]).to_rat();
        let b = IntPolynomial::from_i64(&[1, 2, 1]).to_rat();
        assert_eq!(a.gcd(&b), IntPolynomial::from_i64(&[1, 1]).to_rat());
    }

    #[test]
    fn parse_roundtrip() {
        let p: IntPolynomial = parse_polynomial("-2,0,1").unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[-2, 0, 1]));
        assert_eq!(p.to_string(), "-2,0,1");
        assert!(parse_polynomial::<BigInt>("1,,2").is_err());
    }
}
