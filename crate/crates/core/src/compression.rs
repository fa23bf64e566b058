//! i-compressions along a basis, downward-closed sets and the discrete
//! Brunn-Minkowski defect `|A+B| + sum_{I ⊊ [d]} |p_I(A+B)| - (|A|^{1/d} + |B|^{1/d})^d`.
//!
//! Point sets are handled in the integer coordinates of the basis; results
//! stay in those coordinates unless mapped back with
//! [`CompressionBasis::to_ambient`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{bm_constant, default_precision_bits};
use crate::pointset::{self, sumset, Point, PointSet};
use crate::{BigRational, RatInterval, RatMatrix};

const MAX_BITS: u32 = 1 << 14;

/// A basis `b_1, ..., b_d` of `Q^d`, stored as the columns of a nonsingular
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CompressionBasis {
    matrix: RatMatrix,
}

impl CompressionBasis {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare);
        }
        if matrix.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(CompressionBasis { matrix })
    }

    pub fn standard(d: usize) -> Self {
        CompressionBasis {
            matrix: RatMatrix::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    fn is_standard(&self) -> bool {
        self.matrix == RatMatrix::identity(self.dim())
    }

    /// Integer coordinates of `A` in this basis.
    pub fn coordinates(&self, a: &PointSet) -> Result<PointSet> {
        if self.is_standard() {
            if a.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: a.dim(),
                });
            }
            return Ok(a.clone());
        }
        pointset::basis_coordinates(a, &self.matrix)
    }

    /// Points with the given basis coordinates, back in `Z^d`.
    pub fn to_ambient(&self, coords: &PointSet) -> Result<PointSet> {
        coords.apply_rat(&self.matrix)
    }
}

fn check_axis(i: usize, d: usize) -> Result<()> {
    if i >= d {
        return Err(Error::AxisOutOfRange { axis: i, dim: d });
    }
    Ok(())
}

/// i-compression of a set already in basis coordinates; `None` if nothing
/// moves.
fn compress_coords(a: &PointSet, i: usize) -> Option<PointSet> {
    let mut fibers: BTreeMap<Point, Vec<i64>> = BTreeMap::new();
    for p in a.iter() {
        let mut key = p.clone();
        key[i] = 0;
        fibers.entry(key).or_default().push(p[i]);
    }
    let unchanged = fibers
        .values()
        .all(|v| v.iter().enumerate().all(|(k, &x)| x == k as i64));
    if unchanged {
        return None;
    }
    let mut points = Vec::with_capacity(a.len());
    for (key, v) in fibers {
        for k in 0..v.len() {
            let mut p = key.clone();
            p[i] = k as i64;
            points.push(p);
        }
    }
    Some(PointSet::new(a.dim(), points).expect("dimension preserved"))
}

/// i-compression along axis `i` (0-based) of `basis`: every line parallel
/// to `b_i` meeting `A` in `m` points is replaced by coordinates
/// `0, 1, ..., m-1`. The result is in basis coordinates.
pub fn i_compress(a: &PointSet, i: usize, basis: &CompressionBasis) -> Result<PointSet> {
    check_axis(i, basis.dim())?;
    let coords = basis.coordinates(a)?;
    Ok(compress_coords(&coords, i).unwrap_or(coords))
}

/// Whether `A ⊂ Z_{>=0}^d` is downward closed under coordinatewise order.
pub fn is_compressed(a: &PointSet) -> Result<bool> {
    if let Some(p) = a.iter().find(|p| p.iter().any(|&x| x < 0)) {
        return Err(Error::NegativeCoordinate(p.clone()));
    }
    Ok(a.iter().all(|p| {
        (0..p.len()).all(|k| {
            p[k] == 0 || {
                let mut q = p.clone();
                q[k] -= 1;
                a.contains(&q)
            }
        })
    }))
}

/// i-compressions for `i = 1, ..., d` in turn until none changes the set.
pub fn full_compress(a: &PointSet, basis: &CompressionBasis) -> Result<PointSet> {
    let d = basis.dim();
    let mut cur = basis.coordinates(a)?;
    let mut idle = 0;
    let mut i = 0;
    while idle < d {
        match compress_coords(&cur, i) {
            Some(next) => {
                cur = next;
                idle = 0;
            }
            None => idle += 1,
        }
        i = (i + 1) % d;
    }
    Ok(cur)
}

/// Certified value of the discrete Brunn-Minkowski defect.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BmDefect {
    pub sumset: usize,
    /// `sum_{I ⊊ [d]} |p_I(A+B)|`.
    pub projections: usize,
    pub bound: RatInterval,
    pub defect: RatInterval,
    pub bits: u32,
}

impl BmDefect {
    pub fn certified_nonnegative(&self) -> bool {
        self.defect.certainly_nonnegative()
    }
}

/// `|A+B| + sum_{I ⊊ [d]} |p_I(A+B)| - (|A|^{1/d} + |B|^{1/d})^d`, with
/// projections taken along `basis`. Precision starts at the default and is
/// doubled until the sign is decided or the enclosure is narrower than
/// `2^-64`.
pub fn bm_defect(a: &PointSet, b: &PointSet, basis: &CompressionBasis) -> Result<BmDefect> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("Brunn-Minkowski input"));
    }
    a.check_dim(b)?;
    let d = basis.dim();
    let s = sumset(&basis.coordinates(a)?, &basis.coordinates(b)?)?;
    let mut projections = 0usize;
    for mask in 0..(1usize << d) - 1 {
        let axes: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
        projections += pointset::project_coordinates(&s, &axes).len();
    }
    let total = BigRational::from_integer(BigInt::from(s.len() + projections));
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << 64);
    let (na, nb) = (BigInt::from(a.len()), BigInt::from(b.len()));
    let mut bits = default_precision_bits();
    loop {
        let bound = bm_constant(&na, &nb, d as u32, bits);
        let defect = RatInterval::new(&total - bound.hi(), &total - bound.lo());
        let decided = defect.certainly_nonnegative() || defect.certainly_negative();
        if decided || defect.width() < tiny || bits >= MAX_BITS {
            return Ok(BmDefect {
                sumset: s.len(),
                projections,
                bound,
                defect,
                bits,
            });
        }
        bits *= 2;
    }
}
