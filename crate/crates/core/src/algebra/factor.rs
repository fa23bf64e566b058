//! Irreducibility over `Q` for primitive integer polynomials.
//!
//! Factor degrees mod several primes rule out most splittings; whatever
//! degrees survive are settled by Kronecker-style enumeration of candidate
//! factors, with every candidate coefficient held to the Mignotte bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::Fp;
use super::Matrix;
use crate::error::{Error, Result};
use crate::IntPolynomial;

const PRIMES: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Why a polynomial was judged irreducible or reducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// Degree one.
    Linear,
    /// No factor degree is compatible with the factorizations modulo these
    /// primes.
    DegreeSets { primes: Vec<u64> },
    /// Degree sets left these candidate degrees, and exhaustive search
    /// within the Mignotte bound found no factor of any of them.
    Exhaustive { degrees: Vec<usize> },
    /// A nontrivial factor (primitive, positive leading coefficient).
    Factor(IntPolynomial),
}

impl IrreducibilityCertificate {
    pub fn is_irreducible(&self) -> bool {
        !matches!(self, IrreducibilityCertificate::Factor(_))
    }
}

/// `true` iff `p` admits no factorization into two nonconstant integer
/// polynomials. `p` must be nonconstant and primitive.
pub fn is_irreducible_q(p: &IntPolynomial) -> Result<bool> {
    Ok(irreducibility(p)?.is_irreducible())
}

pub fn irreducibility(p: &IntPolynomial) -> Result<IrreducibilityCertificate> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !p.is_primitive() {
        return Err(Error::NotPrimitive(p.content().to_string()));
    }
    let f = p.primitive_part();
    if n == 1 {
        return Ok(IrreducibilityCertificate::Linear);
    }
    if f.coeff(0).is_zero() {
        return Ok(IrreducibilityCertificate::Factor(IntPolynomial::from_i64(&[0, 1])));
    }

    let fr = f.to_rat();
    let g = fr.gcd(&fr.derivative());
    if g.degree().unwrap_or(0) > 0 {
        let factor = super::primitive_integer_clearing(&g)?;
        return Ok(IrreducibilityCertificate::Factor(factor));
    }

    let mut allowed: BTreeSet<usize> = (1..n).collect();
    let mut used = Vec::new();
    for &q in PRIMES.iter() {
        let Some(degrees) = Fp(q).factor_degrees(&f) else {
            continue;
        };
        used.push(q);
        let sums = subset_sums(&degrees);
        allowed.retain(|k| sums.contains(k));
        if allowed.is_empty() {
            return Ok(IrreducibilityCertificate::DegreeSets { primes: used });
        }
        if used.len() >= 16 {
            break;
        }
    }

    let degrees: Vec<usize> = allowed.iter().copied().filter(|&k| 2 * k <= n).collect();
    for &k in &degrees {
        if let Some(factor) = find_factor_of_degree(&f, k) {
            return Ok(IrreducibilityCertificate::Factor(factor));
        }
    }
    Ok(IrreducibilityCertificate::Exhaustive { degrees })
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in parts {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

/// Coefficientwise bound on any degree-`k` factor of `f` in `Z[x]`:
/// `|b_j| <= C(k, j) * ||f||_2`.
pub fn mignotte_bound(f: &IntPolynomial, k: usize) -> Vec<BigInt> {
    let norm = f.norm_sq().sqrt() + BigInt::one();
    let mut binom = BigInt::one();
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        out.push(&binom * &norm);
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    out
}

fn signed_divisors(x: &BigInt) -> Vec<BigInt> {
    let x = x.abs();
    let mut divs = Vec::new();
    if let Some(v) = x.to_u64() {
        let mut i = 1u64;
        while i * i <= v {
            if v % i == 0 {
                divs.push(BigInt::from(i));
                if i * i != v {
                    divs.push(BigInt::from(v / i));
                }
            }
            i += 1;
        }
    } else {
        let mut i = BigInt::one();
        while &i * &i <= x {
            if x.is_multiple_of(&i) {
                divs.push(i.clone());
                if &i * &i != x {
                    divs.push(&x / &i);
                }
            }
            i += 1;
        }
    }
    divs.sort();
    let neg: Vec<BigInt> = divs.iter().map(|d| -d).collect();
    divs.extend(neg);
    divs
}

/// Kronecker's method restricted to degree `k`: a factor `g` has `g(t) | f(t)`
/// at every integer `t`, so interpolating through divisor choices at `k + 1`
/// points enumerates every candidate.
fn find_factor_of_degree(f: &IntPolynomial, k: usize) -> Option<IntPolynomial> {
    // candidate evaluation points with the fewest divisors
    let mut pts: Vec<(usize, i64, BigInt)> = Vec::new();
    let mut t: i64 = 0;
    while pts.len() < 4 * (k + 1) + 4 {
        for cand in [t, -t] {
            if pts.iter().any(|p| p.1 == cand) {
                continue;
            }
            let v = f.eval(&BigInt::from(cand));
            if v.is_zero() {
                return Some(IntPolynomial::from_i64(&[-cand, 1]));
            }
            let nd = signed_divisors(&v).len();
            pts.push((nd, cand, v));
        }
        t += 1;
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())));
    pts.truncate(k + 1);

    let xs: Vec<i64> = pts.iter().map(|p| p.1).collect();
    let vand = Matrix::<BigRational>::from_rows(
        xs.iter()
            .map(|&x| {
                (0..=k)
                    .map(|j| BigRational::from_integer(BigInt::from(x).pow(j as u32)))
                    .collect()
            })
            .collect(),
    )
    .ok()?;
    let inv = vand.inverse().ok()?;
    let (den, w) = inv.clear_denominators();
    let divisor_lists: Vec<Vec<BigInt>> = pts.iter().map(|p| signed_divisors(&p.2)).collect();
    let bound = mignotte_bound(f, k);
    let lead = f.leading().unwrap().clone();
    let constant = f.coeff(0);

    let mut idx = vec![0usize; k + 1];
    loop {
        // the sign of g is irrelevant: only positive values at the first point
        if divisor_lists[0][idx[0]].is_positive() {
            let vals: Vec<BigInt> = (0..=k).map(|j| divisor_lists[j][idx[j]].clone()).collect();
            if let Some(g) = interpolate(&w, &den, &vals, &bound) {
                let gl = g.leading().unwrap();
                if lead.is_multiple_of(gl) && constant.is_multiple_of(&g.coeff(0)) {
                    if let Some(_q) = f.exact_div(&g) {
                        return Some(g.primitive_part());
                    }
                }
            }
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos > k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < divisor_lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn interpolate(w: &Matrix<BigInt>, den: &BigInt, vals: &[BigInt], bound: &[BigInt]) -> Option<IntPolynomial> {
    let k = vals.len() - 1;
    let mut coeffs = Vec::with_capacity(k + 1);
    for (i, b) in bound.iter().enumerate() {
        let num: BigInt = (0..=k).map(|j| &w[(i, j)] * &vals[j]).sum();
        let (q, r) = num.div_rem(den);
        if !r.is_zero() || q.abs() > *b {
            return None;
        }
        coeffs.push(q);
    }
    let g = IntPolynomial::new(coeffs);
    (g.degree() == Some(k)).then_some(g)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn examples() {
        assert!(!is_irreducible_q(&p(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible_q(&p(&[-2, 0, 1])).unwrap());
        assert!(!is_irreducible_q(&p(&[4, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn x4_plus_4_factor_is_reported() {
        match irreducibility(&p(&[4, 0, 0, 0, 1])).unwrap() {
            IrreducibilityCertificate::Factor(g) => {
                assert!(g == p(&[2, 2, 1]) || g == p(&[2, -2, 1]), "{g:?}");
            }
            other => panic!("expected a factor, got {other:?}"),
        }
    }

    #[test]
    fn x4_plus_1_needs_the_exhaustive_fallback() {
        // reducible modulo every prime, irreducible over Q
        let cert = irreducibility(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(cert, IrreducibilityCertificate::Exhaustive { degrees: vec![2] });
    }

    #[test]
    fn errors() {
        assert_eq!(is_irreducible_q(&p(&[3])), Err(Error::ConstantPolynomial));
        assert!(matches!(is_irreducible_q(&p(&[2, 0, 2])), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn repeated_and_rational_roots() {
        assert!(!is_irreducible_q(&p(&[1, 2, 1])).unwrap());
        assert!(!is_irreducible_q(&p(&[0, 1, 1])).unwrap());
        // 2x^2 + x - 1 = (2x - 1)(x + 1)
        assert!(!is_irreducible_q(&p(&[-1, 1, 2])).unwrap());
        // 6x^2 - 5x + 1 = (2x-1)(3x-1): no integer roots
        assert!(!is_irreducible_q(&p(&[1, -5, 6])).unwrap());
        assert!(is_irreducible_q(&p(&[-2, 1, 2])).unwrap());
    }

    #[test]
    fn mignotte_bound_covers_known_factor() {
        let f = p(&[4, 0, 0, 0, 1]);
        let b = mignotte_bound(&f, 2);
        for (c, bound) in p(&[2, -2, 1]).coeffs().iter().zip(&b) {
            assert!(c.abs() <= *bound);
        }
    }
}
