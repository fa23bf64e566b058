//! Complex roots of integer polynomials with certified error radii.
//!
//! Approximations come from Aberth–Ehrlich iteration in `f64`, are polished
//! by Newton steps in exact dyadic arithmetic, and are then certified with
//! the Weierstrass-correction inclusion: all roots lie in the union of the
//! disks `D(z_i, n |W_i|)`, and each connected component of `m` disks holds
//! exactly `m` roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{sqrt_enclosure, sqrt_upper, Interval};
use crate::{IntPolynomial, RatInterval};

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn zero() -> Self {
        ComplexRational::new(BigRational::zero(), BigRational::zero())
    }

    fn from_int(x: &BigInt) -> Self {
        ComplexRational::new(BigRational::from_integer(x.clone()), BigRational::zero())
    }

    fn from_f64(z: Complex64) -> Option<Self> {
        Some(ComplexRational::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn add(&self, o: &Self) -> Self {
        ComplexRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        ComplexRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        ComplexRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// `|z|^2`, exact.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &Self) -> Self {
        let n = o.norm_sq();
        ComplexRational::new(
            (&self.re * &o.re + &self.im * &o.im) / &n,
            (&self.im * &o.re - &self.re * &o.im) / &n,
        )
    }

    fn round(&self, bits: u32) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let r = |x: &BigRational| (x * &scale).round() / &scale;
        ComplexRational::new(r(&self.re), r(&self.im))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// A root approximation `center` and a radius with the guarantee that some
/// root of the polynomial lies within `radius` of `center` (matching roots to
/// centers one-to-one).
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub center: ComplexRational,
    pub radius: BigRational,
}

impl CertifiedRoot {
    pub fn approx(&self) -> Complex64 {
        self.center.to_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Enclosure of the modulus of the true root.
    pub fn modulus(&self, bits: u32) -> RatInterval {
        let m = sqrt_enclosure(&self.center.norm_sq(), bits);
        let lo = m.lo() - &self.radius;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        Interval::new(lo, m.hi() + &self.radius)
    }
}

fn eval(coeffs: &[ComplexRational], z: &ComplexRational) -> ComplexRational {
    coeffs
        .iter()
        .rev()
        .fold(ComplexRational::zero(), |acc, c| acc.mul(z).add(c))
}

fn aberth_f64(f: &IntPolynomial) -> Vec<Complex64> {
    let n = f.degree().unwrap();
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let lead = c[n];
    // Cauchy bound
    let radius = 1.0 + c[..n].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[n], 0.0);
        let mut dp = Complex64::zero();
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        (p, dp)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::one() / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

fn certify(coeffs: &[ComplexRational], lead: &BigInt, z: &[ComplexRational], bits: u32) -> Option<Vec<BigRational>> {
    let n = z.len();
    let lead = ComplexRational::from_int(lead);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let fz = eval(coeffs, &z[i]);
        if fz.is_zero() {
            radii.push(BigRational::zero());
            continue;
        }
        let mut denom = lead.clone();
        for j in 0..n {
            if j != i {
                let diff = z[i].sub(&z[j]);
                if diff.is_zero() {
                    return None;
                }
                denom = denom.mul(&diff);
            }
        }
        let w_sq = fz.norm_sq() / denom.norm_sq();
        radii.push(sqrt_upper(&w_sq, bits + 8) * BigRational::from_integer(BigInt::from(n)));
    }

    // merge overlapping disks into components
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, i: usize) -> usize {
        if c[i] != i {
            let r = find(c, c[i]);
            c[i] = r;
        }
        c[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            let reach = &radii[i] + &radii[j];
            if z[i].sub(&z[j]).norm_sq() <= &reach * &reach {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut comp, i)).collect();
    let mut out = radii.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && roots[i] == roots[j] {
                let dist = sqrt_upper(&z[i].sub(&z[j]).norm_sq(), bits + 8);
                let r = dist + &radii[j];
                if r > out[i] {
                    out[i] = r;
                }
            }
        }
    }
    Some(out)
}

/// Roots of a nonconstant integer polynomial, each with a certified radius
/// `<= tol`. Precision is doubled from 64 bits up to 4096 bits before giving
/// up with `Error::Certification`.
pub fn complex_roots(p: &IntPolynomial, tol: &BigRational) -> Result<Vec<CertifiedRoot>> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let coeffs: Vec<ComplexRational> = p.coeffs().iter().map(ComplexRational::from_int).collect();
    let dcoeffs: Vec<ComplexRational> = p.derivative().coeffs().iter().map(ComplexRational::from_int).collect();
    let lead = p.leading().unwrap().clone();

    let mut z: Vec<ComplexRational> = aberth_f64(p)
        .into_iter()
        .map(|w| ComplexRational::from_f64(w).unwrap_or_else(ComplexRational::zero))
        .collect();

    if n == 1 {
        // the root is -a0/a1 exactly
        let r = BigRational::new(-p.coeff(0), p.coeff(1));
        z = vec![ComplexRational::new(r, BigRational::zero())];
    }

    let mut best = None::<BigRational>;
    let mut bits = 64u32;
    while bits <= 4096 {
        for zi in z.iter_mut() {
            for _ in 0..6 {
                let fz = eval(&coeffs, zi);
                if fz.is_zero() {
                    break;
                }
                let dz = eval(&dcoeffs, zi);
                if dz.is_zero() {
                    break;
                }
                *zi = zi.sub(&fz.div(&dz)).round(bits);
            }
        }
        if let Some(radii) = certify(&coeffs, &lead, &z, bits) {
            let worst = radii.iter().max().cloned().unwrap_or_else(BigRational::zero);
            if worst <= *tol {
                return Ok(z
                    .iter()
                    .zip(radii)
                    .map(|(c, r)| CertifiedRoot { center: c.clone(), radius: r })
                    .collect());
            }
            if best.as_ref().is_none_or(|b| worst < *b) {
                best = Some(worst);
            }
        }
        bits *= 2;
    }
    Err(Error::Certification {
        tol: tol.to_string(),
        best: best.map_or_else(|| "unbounded".to_string(), |b| format!("{:e}", b.to_f64().unwrap_or(f64::INFINITY))),
    })
}
