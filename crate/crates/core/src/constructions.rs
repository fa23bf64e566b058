//! The matrix pair attached to an algebraic number and the named point sets
//! of the extremal examples.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::irreducibility;
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::{IntMatrix, IntPolynomial};

/// For `f = a_d x^d + ... + a_0` irreducible with content 1 and `a_d > 0`:
/// `L1 = diag(1, ..., 1, a_d)` and `L2` with ones below the diagonal and
/// last column `(-a_0, ..., -a_{d-1})`. Multiplication by a root `λ` of `f`
/// in the basis `1, λ, ..., λ^{d-1}` is `L1^{-1} L2` up to the rescaling of
/// the last coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionPair {
    pub polynomial: IntPolynomial,
    pub b: BigInt,
    pub l1: IntMatrix,
    pub l2: IntMatrix,
}

/// Builds the pair for `f`, first flipping the sign so that `a_d > 0`.
pub fn companion_pair(f: &IntPolynomial) -> Result<CompanionPair> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if !f.is_primitive() {
        return Err(Error::NotPrimitive(f.content().to_string()));
    }
    let f = if f.leading().unwrap().is_negative() {
        f.scale(&BigInt::from(-1))
    } else {
        f.clone()
    };
    if !irreducibility(&f)?.is_irreducible() {
        return Err(Error::ReduciblePolynomial);
    }
    let b = f.coeff(d).clone();
    let mut diag = vec![BigInt::from(1); d];
    diag[d - 1] = b.clone();
    let l1 = IntMatrix::diagonal(&diag);
    let mut l2 = IntMatrix::zeros(d, d);
    for i in 1..d {
        l2[(i, i - 1)] = BigInt::from(1);
    }
    for i in 0..d {
        l2[(i, d - 1)] = -f.coeff(i);
    }
    Ok(CompanionPair {
        polynomial: f,
        b,
        l1,
        l2,
    })
}

fn positive(name: &str, n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("{name} must be at least 1, got {n}")));
    }
    Ok(())
}

/// `{(x, y) : 0 <= x < m, 0 <= y < n}`; the point `(x, y)` stands for
/// `x + y λ` in the basis `1, λ`.
pub fn kp_box(m: i64, n: i64) -> Result<PointSet> {
    grid_box(&[m, n])
}

/// `{(x, 2y) : x, y in {1, ..., n}}`.
pub fn skew_box(n: i64) -> Result<PointSet> {
    positive("n", n)?;
    PointSet::new(2, (1..=n).flat_map(|x| (1..=n).map(move |y| vec![x, 2 * y])))
}

/// `{(0, x) : x in {1, ..., n}}`.
pub fn rot_line(n: i64) -> Result<PointSet> {
    positive("n", n)?;
    PointSet::new(2, (1..=n).map(|x| vec![0, x]))
}

/// The box `[0, s_1) x ... x [0, s_d)`.
pub fn grid_box(sides: &[i64]) -> Result<PointSet> {
    if sides.is_empty() {
        return Err(Error::InvalidParameter("box needs at least one side".into()));
    }
    for &s in sides {
        positive("side", s)?;
    }
    let mut points = vec![Vec::with_capacity(sides.len())];
    for &s in sides {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..s).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    PointSet::new(sides.len(), points)
}

/// Anticlockwise rotation by a right angle.
pub fn rot90() -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]).expect("2x2")
}

/// `(diag(2, 1), [[0, -1], [2, 0]])`: irreducible but not coprime.
pub fn counterexample_pair() -> (IntMatrix, IntMatrix) {
    (
        IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]).expect("2x2"),
        IntMatrix::from_i64_rows(&[&[0, -1], &[2, 0]]).expect("2x2"),
    )
}

/// `(M + 2N - 2)(M + N - 1)`, the size of `A + √2 A` for the `M x N` box.
/// A single column (`M = 1`) only reaches even first coordinates, giving `N^2`.
pub fn kp_sumset_size(m: i64, n: i64) -> i64 {
    if m == 1 {
        return n * n;
    }
    (m + 2 * n - 2) * (m + n - 1)
}
