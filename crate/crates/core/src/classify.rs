//! Decision procedures for irreducible and coprime matrix pairs, the
//! Brunn-Minkowski coefficient `(p^{1/d} + q^{1/d})^d` and the invariant
//! `H = |a_d| prod (1 + |r_i|)` of an integer polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{
    char_poly, complex_roots, irreducibility, minimal_denominator, primitive_integer_clearing,
    CertifiedRoot, IrreducibilityCertificate,
};
use crate::error::{Error, Result};
use crate::interval::{approx_log2, bm_constant, default_precision_bits, nth_root_enclosure, sqrt_enclosure};
use crate::{BigRational, IntMatrix, IntPolynomial, RatInterval, RatMatrix, RatPolynomial};

fn check_pair(l1: &IntMatrix, l2: &IntMatrix) -> Result<()> {
    if !l1.is_square() || !l2.is_square() {
        return Err(Error::NotSquare);
    }
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch {
            expected: l1.dim(),
            found: l2.dim(),
        });
    }
    Ok(())
}

/// `L1^{-1} L2`, or `None` if `L1` is singular.
pub fn relative_matrix(l1: &IntMatrix, l2: &IntMatrix) -> Option<RatMatrix> {
    l1.to_rat().inverse().ok().map(|inv| &inv * &l2.to_rat())
}

/// Why a pair is (or is not) irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairEvidence {
    /// Indices (1-based) of the singular matrices.
    Singular { which: Vec<usize> },
    Linear,
    DegreeSets { primes: Vec<u64> },
    Exhaustive { degrees: Vec<usize> },
    Factor { factor: String },
}

impl From<IrreducibilityCertificate> for PairEvidence {
    fn from(c: IrreducibilityCertificate) -> Self {
        match c {
            IrreducibilityCertificate::Linear => PairEvidence::Linear,
            IrreducibilityCertificate::DegreeSets { primes } => PairEvidence::DegreeSets { primes },
            IrreducibilityCertificate::Exhaustive { degrees } => PairEvidence::Exhaustive { degrees },
            IrreducibilityCertificate::Factor(f) => PairEvidence::Factor { factor: f.to_string() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    pub evidence: PairEvidence,
}

/// Irreducible iff both matrices are invertible and the characteristic
/// polynomial of `L1^{-1} L2` is irreducible over `Q`.
pub fn is_irreducible_pair(l1: &IntMatrix, l2: &IntMatrix) -> Result<IrreducibilityVerdict> {
    check_pair(l1, l2)?;
    let which: Vec<usize> = [l1, l2]
        .iter()
        .enumerate()
        .filter(|(_, m)| m.det().is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    if !which.is_empty() {
        return Ok(IrreducibilityVerdict {
            irreducible: false,
            evidence: PairEvidence::Singular { which },
        });
    }
    let m = relative_matrix(l1, l2).expect("L1 invertible");
    let f = primitive_integer_clearing(&char_poly(&m))?;
    let cert = irreducibility(&f)?;
    Ok(IrreducibilityVerdict {
        irreducible: cert.is_irreducible(),
        evidence: cert.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimalityVerdict {
    pub coprime: bool,
    #[serde(serialize_with = "serialize_int")]
    pub c_prime: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub det_l1: BigInt,
}

/// For an irreducible pair: coprime iff the least `c'` with
/// `c' char_poly(L1^{-1} L2)` integral equals `|det L1|`.
pub fn is_coprime_pair(l1: &IntMatrix, l2: &IntMatrix) -> Result<CoprimalityVerdict> {
    if !is_irreducible_pair(l1, l2)?.irreducible {
        return Err(Error::ReduciblePair);
    }
    let m = relative_matrix(l1, l2).expect("irreducible pairs are invertible");
    let c_prime = minimal_denominator(&char_poly(&m))?;
    let det_l1 = l1.det().abs();
    Ok(CoprimalityVerdict {
        coprime: c_prime == det_l1,
        c_prime,
        det_l1,
    })
}

/// `(p^{1/d} + q^{1/d})^d` with `p = |det L1|`, `q = |det L2|`, enclosed to
/// width at most `2^-53` (and at the default precision or better).
pub fn bound_coefficient(l1: &IntMatrix, l2: &IntMatrix) -> Result<RatInterval> {
    check_pair(l1, l2)?;
    let p = l1.det().abs();
    let q = l2.det().abs();
    if p.is_zero() || q.is_zero() {
        return Err(Error::Singular);
    }
    Ok(bm_coefficient(&p, &q, l1.dim() as u32, &two_pow_neg(53)))
}

pub(crate) fn two_pow_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// `(p^{1/d} + q^{1/d})^d` to width `<= tol`.
pub fn bm_coefficient(p: &BigInt, q: &BigInt, d: u32, tol: &BigRational) -> RatInterval {
    let mut bits = default_precision_bits();
    loop {
        let iv = bm_constant(p, q, d, bits);
        if iv.width() <= *tol {
            return iv;
        }
        bits *= 2;
    }
}

/// Certified enclosure of `H(f) = |a_d| prod_i (1 + |r_i|)`, which equals
/// `prod_i (|a_i| + |b_i|)` for any factorization `f = prod (a_i x + b_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct HEstimate {
    #[serde(serialize_with = "serialize_poly")]
    pub polynomial: IntPolynomial,
    #[serde(serialize_with = "serialize_int")]
    pub leading: BigInt,
    #[serde(skip)]
    pub roots: Vec<CertifiedRoot>,
    pub root_moduli: Vec<RatInterval>,
    pub value: RatInterval,
    /// `(|a_d|^{1/d} + |a_0|^{1/d})^d`, a lower bound for `H` by Hölder's
    /// inequality.
    pub holder_bound: RatInterval,
    /// Proven `H = holder_bound` exactly (all roots share one modulus).
    pub holder_equality: bool,
}

impl HEstimate {
    /// `H >= holder_bound`, certified by separation or exact equality.
    pub fn satisfies_holder(&self) -> bool {
        self.holder_equality || self.holder_bound.certainly_le(&self.value)
    }
}

/// Whether every complex root of `f` has modulus exactly
/// `rho = (|a_0| / |a_d|)^{1/d}`, which is when Hölder's bound is attained.
///
/// Roots on that circle force `x^d f(rho^2 / x) = (a_0/a_d) f(x)`, checked
/// exactly. Under that symmetry a root `r` off the circle has the distinct
/// partner root `rho^2 / conj(r)` at distance `||r|^2 - rho^2| / |r|`; the
/// enclosures show that distance is below Mahler's separation bound
/// `sqrt(3) d^{-(d+2)/2} ||f||^{1-d}`, so no such root exists.
pub fn roots_on_common_circle(f: &IntPolynomial) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    let ad = f.coeff(d).clone();
    let a0 = f.coeff(0).clone();
    if a0.is_zero() {
        return Ok(false);
    }
    let ratio = BigRational::new(a0.abs(), ad.abs());
    // a_k rho^{2k} = (a_0/a_d) a_{d-k}
    for k in 1..=d {
        let (ak, adk) = (f.coeff(k), f.coeff(d - k));
        if ak.is_zero() || adk.is_zero() {
            if !(ak.is_zero() && adk.is_zero()) {
                return Ok(false);
            }
            continue;
        }
        let target = BigRational::new(&a0 * adk, &ad * ak);
        if !target.is_positive() {
            return Ok(false);
        }
        if num_traits::pow(target, d) != num_traits::pow(ratio.clone(), 2 * k) {
            return Ok(false);
        }
    }
    let fr = f.to_rat();
    if fr.gcd(&fr.derivative()).degree() != Some(0) {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let dq = BigRational::from_integer(BigInt::from(d));
    let bits = default_precision_bits().max(64);
    let d_pow = sqrt_enclosure(&num_traits::pow(dq, d + 2), bits).hi().clone();
    let norm = sqrt_enclosure(&BigRational::from_integer(f.norm_sq()), bits).hi().clone();
    let sep = BigRational::new(BigInt::from(17), BigInt::from(10)) / (d_pow * num_traits::pow(norm, d - 1));
    let rho2 = nth_root_enclosure(&(&ratio * &ratio), d as u32, bits + approx_log2(&sep).unsigned_abs() as u32);
    let mut tol = &sep / BigRational::from_integer(BigInt::from(64));
    for _ in 0..4 {
        let roots = complex_roots(f, &tol)?;
        let mbits = bits + 16 + (-approx_log2(&tol)).max(0) as u32;
        let ok = roots.iter().all(|r| {
            let m = r.modulus(mbits);
            if !m.lo().is_positive() {
                return false;
            }
            let sq = m.powi(2);
            let gap = (sq.hi() - rho2.lo()).abs().max((sq.lo() - rho2.hi()).abs());
            gap / m.lo() < sep
        });
        if ok {
            return Ok(true);
        }
        tol /= BigRational::from_integer(BigInt::from(1u64 << 20));
    }
    Ok(false)
}

/// `H(f)` for a nonconstant primitive `f`, to interval width `<= tol`.
pub fn h_value(f: &IntPolynomial, tol: &BigRational) -> Result<HEstimate> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_primitive() {
        return Err(Error::NotPrimitive(f.content().to_string()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let leading = f.leading().expect("nonconstant").abs();
    let lead_q = BigRational::from_integer(leading.clone());
    // crude magnitude of H from the coefficient norm, to scale the root tolerance
    let scale_bits = (f.norm_sq().bits() / 2 + 2 + n as u64) as i64;
    let mut root_tol = tol / BigRational::from_integer(BigInt::from(8 * n as u64) << scale_bits.max(0) as usize);
    let holder_bound = bm_coefficient(
        &leading,
        &f.coeff(0).abs(),
        n as u32,
        &(tol / BigRational::from_integer(BigInt::from(16))),
    );
    for _ in 0..8 {
        let roots = complex_roots(f, &root_tol)?;
        let bits = (default_precision_bits() as i64).max(8 - approx_log2(&root_tol)) as u32;
        let root_moduli: Vec<RatInterval> = roots.iter().map(|r| r.modulus(bits)).collect();
        let one = RatInterval::point(BigRational::one());
        let value = root_moduli
            .iter()
            .fold(RatInterval::point(lead_q.clone()), |acc, m| &acc * &(&one + m));
        if value.width() <= *tol {
            return Ok(HEstimate {
                polynomial: f.clone(),
                leading,
                roots,
                root_moduli,
                value,
                holder_bound,
                holder_equality: roots_on_common_circle(f)?,
            });
        }
        root_tol /= BigRational::from_integer(BigInt::from(1u64 << 16));
    }
    Err(Error::Certification {
        tol: tol.to_string(),
        best: root_tol.to_string(),
    })
}

/// `H` of the primitive integer clearing of `char_poly(L1^{-1} L2)` for an
/// irreducible pair (where it is the minimal polynomial).
pub fn matrix_h_value(l1: &IntMatrix, l2: &IntMatrix, tol: &BigRational) -> Result<HEstimate> {
    if !is_irreducible_pair(l1, l2)?.irreducible {
        return Err(Error::ReduciblePair);
    }
    let m = relative_matrix(l1, l2).expect("irreducible pairs are invertible");
    h_value(&primitive_integer_clearing(&char_poly(&m))?, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    pub irreducibility: IrreducibilityVerdict,
    pub coprimality: Option<CoprimalityVerdict>,
    /// Set when `h` was computed for an irreducible pair that is not
    /// coprime.
    pub h_outside_coprime: bool,
}

/// Everything `classify` knows about a pair. Absent fields are those whose
/// preconditions fail (no `char_poly` for singular `L1`, no `coprime` or `h`
/// for reducible pairs).
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub d: usize,
    #[serde(serialize_with = "serialize_int")]
    pub p: BigInt,
    #[serde(serialize_with = "serialize_int")]
    pub q: BigInt,
    pub invertible: [bool; 2],
    pub irreducible: bool,
    pub coprime: Option<bool>,
    #[serde(serialize_with = "serialize_rat_poly")]
    pub char_poly: Option<RatPolynomial>,
    #[serde(serialize_with = "serialize_opt_int")]
    pub c_prime: Option<BigInt>,
    pub bound: Option<RatInterval>,
    pub h: Option<RatInterval>,
    /// `h >= bound`, certified by interval separation or exact equality;
    /// `None` when either is absent.
    pub h_ge_bound: Option<bool>,
    pub certificates: Certificates,
}

/// `H >= (p^{1/d} + q^{1/d})^d`: either the enclosures separate, or `H`
/// attains its Hölder bound and that bound is the same expression (`p` and
/// `q` are the outer coefficients of the polynomial).
pub fn h_dominates_bound(h: &HEstimate, p: &BigInt, q: &BigInt, bound: &RatInterval) -> bool {
    if bound.certainly_le(&h.value) {
        return true;
    }
    let f = &h.polynomial;
    let d = f.degree().unwrap_or(0);
    h.holder_equality && &f.coeff(d).abs() == p && &f.coeff(0).abs() == q
}

/// Default tolerance for `h` in reports: `2^-64`.
pub fn default_h_tolerance() -> BigRational {
    two_pow_neg(64)
}

pub fn classify(l1: &IntMatrix, l2: &IntMatrix) -> Result<ClassificationReport> {
    check_pair(l1, l2)?;
    let d = l1.dim();
    let p = l1.det().abs();
    let q = l2.det().abs();
    let invertible = [!p.is_zero(), !q.is_zero()];
    let irr = is_irreducible_pair(l1, l2)?;
    let rel_poly = relative_matrix(l1, l2).map(|m| char_poly(&m));
    let c_prime = match &rel_poly {
        Some(f) => Some(minimal_denominator(f)?),
        None => None,
    };
    let coprimality = if irr.irreducible {
        Some(is_coprime_pair(l1, l2)?)
    } else {
        None
    };
    let bound = if invertible[0] && invertible[1] {
        Some(bound_coefficient(l1, l2)?)
    } else {
        None
    };
    let h_est = if irr.irreducible {
        Some(matrix_h_value(l1, l2, &default_h_tolerance())?)
    } else {
        None
    };
    let h_ge_bound = match (&h_est, &bound) {
        (Some(h), Some(_)) => Some(h_dominates_bound(h, &p, &q, bound.as_ref().unwrap())),
        _ => None,
    };
    let h = h_est.map(|e| e.value);
    let coprime = coprimality.as_ref().map(|c| c.coprime);
    Ok(ClassificationReport {
        d,
        p,
        q,
        invertible,
        irreducible: irr.irreducible,
        coprime,
        char_poly: rel_poly,
        c_prime,
        bound,
        h,
        h_ge_bound,
        certificates: Certificates {
            irreducibility: irr,
            h_outside_coprime: coprime == Some(false),
            coprimality,
        },
    })
}

/// Integers as JSON numbers when they fit in 64 bits, decimal strings
/// otherwise.
pub fn serialize_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn serialize_opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_int(v, s),
        None => s.serialize_none(),
    }
}

fn serialize_poly<S: Serializer>(f: &IntPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    v.serialize(s)
}

/// Coefficients from the constant term upward, as exact rational strings.
fn serialize_rat_poly<S: Serializer>(f: &Option<RatPolynomial>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => {
            let v: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
            v.serialize(s)
        }
        None => s.serialize_none(),
    }
}
