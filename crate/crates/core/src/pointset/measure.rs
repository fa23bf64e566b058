use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{sumset, transform_sumset, Point, PointSet};
use crate::algebra::integer_kernel;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::rat;
use crate::{BigRational, IntMatrix, RatMatrix};

/// `A` split along the cosets of a lattice, keyed by canonical coset
/// representative. Empty parts are omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetPartition {
    pub base: PointSet,
    pub lattice: Lattice,
    pub parts: BTreeMap<Vec<BigInt>, PointSet>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.values().map(PointSet::len).collect()
    }
}

pub fn coset_partition(a: &PointSet, lattice: &Lattice) -> Result<CosetPartition> {
    if a.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dim(),
            found: a.dim(),
        });
    }
    let mut buckets: BTreeMap<Vec<BigInt>, Vec<Point>> = BTreeMap::new();
    for p in a.iter() {
        let key = lattice.reduce(&crate::lattice::ivec(p));
        buckets.entry(key).or_default().push(p.clone());
    }
    let parts = buckets
        .into_iter()
        .map(|(k, pts)| (k, PointSet::from_sorted_unchecked(a.dim(), pts)))
        .collect();
    Ok(CosetPartition {
        base: a.clone(),
        lattice: lattice.clone(),
        parts,
    })
}

/// Coordinates of every point of `A` in the basis formed by the columns of
/// `basis`; all of them must be integral.
pub fn basis_coordinates(a: &PointSet, basis: &RatMatrix) -> Result<PointSet> {
    if !basis.is_square() || basis.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: basis.rows(),
        });
    }
    let inv = basis.inverse()?;
    a.apply_rat(&inv)
}

/// Projection onto the span of `{b_i : i in axes}` along the remaining basis
/// vectors, reported in basis coordinates with the dropped coordinates set
/// to zero. Axes are 0-based.
pub fn project(a: &PointSet, axes: &[usize], basis: &RatMatrix) -> Result<PointSet> {
    if let Some(&axis) = axes.iter().find(|&&i| i >= a.dim()) {
        return Err(Error::AxisOutOfRange { axis, dim: a.dim() });
    }
    let coords = basis_coordinates(a, basis)?;
    Ok(project_coordinates(&coords, axes))
}

pub(crate) fn project_coordinates(a: &PointSet, axes: &[usize]) -> PointSet {
    let mut keep = vec![false; a.dim()];
    for &i in axes {
        keep[i] = true;
    }
    let pts = a
        .iter()
        .map(|p| p.iter().zip(&keep).map(|(&x, &k)| if k { x } else { 0 }).collect());
    PointSet::new(a.dim(), pts).expect("dimension preserved")
}

/// Linearly independent rational vectors spanning a subspace `U` of `Q^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    d: usize,
    vectors: Vec<Vec<BigRational>>,
}

impl SubspaceBasis {
    pub fn new(d: usize, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
        if !vectors.is_empty() {
            let m = RatMatrix::from_rows(vectors.clone())?;
            if m.rank() != vectors.len() {
                return Err(Error::Singular);
            }
        }
        Ok(SubspaceBasis { d, vectors })
    }

    pub fn from_i64(d: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::new(
            d,
            vectors.iter().map(|v| v.iter().map(|&x| rat(x, 1)).collect()).collect(),
        )
    }

    /// `span{e_i : i in axes}` (0-based).
    pub fn coordinate(d: usize, axes: &[usize]) -> Result<Self> {
        let vectors = axes
            .iter()
            .map(|&i| {
                if i >= d {
                    return Err(Error::AxisOutOfRange { axis: i, dim: d });
                }
                Ok((0..d).map(|j| rat(i64::from(i == j), 1)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, vectors)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    /// Integer matrix whose rows cut out `U`: `x - y in U` iff `W x = W y`.
    fn annihilator(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self
            .vectors
            .iter()
            .map(|v| {
                let m = RatMatrix::from_rows(vec![v.clone()]).expect("nonempty row");
                m.clear_denominators().1.row(0).to_vec()
            })
            .collect();
        let ut = IntMatrix::from_rows(rows).expect("consistent rows");
        integer_kernel(&ut).transpose()
    }
}

/// Largest number of points of `A` on a single translate of `U`.
pub fn max_in_translate(a: &PointSet, u: &SubspaceBasis) -> Result<usize> {
    if u.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: u.ambient_dim(),
        });
    }
    if u.dim() >= a.dim() {
        return Err(Error::FullDimensionalSubspace(u.dim()));
    }
    if u.dim() == 0 {
        return Ok(a.len().min(1));
    }
    let w = u.annihilator();
    let small: Vec<Vec<i64>> = (0..w.rows())
        .map(|i| w.row(i).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
        .collect::<Result<_>>()?;
    let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
    for p in a.iter() {
        *counts.entry(super::apply_small(&small, p)?).or_default() += 1;
    }
    Ok(counts.values().copied().max().unwrap_or(0))
}

/// Cardinalities in `|A1| |A2 + A3| <= |A1 + A2| |A1 + A3|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuzsaCheck {
    pub a1: usize,
    pub a2_plus_a3: usize,
    pub a1_plus_a2: usize,
    pub a1_plus_a3: usize,
    pub holds: bool,
}

pub fn ruzsa_triangle(a1: &PointSet, a2: &PointSet, a3: &PointSet) -> Result<RuzsaCheck> {
    if a1.is_empty() || a2.is_empty() || a3.is_empty() {
        return Err(Error::Empty("Ruzsa triangle input"));
    }
    let a23 = sumset(a2, a3)?.len();
    let a12 = sumset(a1, a2)?.len();
    let a13 = sumset(a1, a3)?.len();
    Ok(RuzsaCheck {
        a1: a1.len(),
        a2_plus_a3: a23,
        a1_plus_a2: a12,
        a1_plus_a3: a13,
        holds: (a1.len() as u128) * (a23 as u128) <= (a12 as u128) * (a13 as u128),
    })
}

pub fn ruzsa_triangle_holds(a1: &PointSet, a2: &PointSet, a3: &PointSet) -> Result<bool> {
    Ok(ruzsa_triangle(a1, a2, a3)?.holds)
}

/// For `|A| = |B|`, `C = A + B` and `K = |C| / |A|`, the check
/// `|C + C| <= K^6 |C|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlunneckeCheck {
    pub a: usize,
    pub c: usize,
    pub c_plus_c: usize,
    pub holds: bool,
}

pub fn plunnecke_check(a: &PointSet, b: &PointSet) -> Result<PlunneckeCheck> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("Plunnecke input"));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "Plunnecke check needs |A| = |B|, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let c = sumset(a, b)?;
    let cc = sumset(&c, &c)?.len();
    let lhs = BigInt::from(cc) * BigInt::from(a.len()).pow(6);
    let rhs = BigInt::from(c.len()).pow(7);
    Ok(PlunneckeCheck {
        a: a.len(),
        c: c.len(),
        c_plus_c: cc,
        holds: lhs <= rhs,
    })
}

/// `|L1 A + L2 A|` against `|A|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingReport {
    pub n: usize,
    pub sumset: usize,
    #[serde(serialize_with = "crate::interval::serialize_rational")]
    pub ratio: BigRational,
}

impl DoublingReport {
    fn new(n: usize, sumset: usize) -> Self {
        DoublingReport {
            n,
            sumset,
            ratio: BigRational::new(BigInt::from(sumset), BigInt::from(n)),
        }
    }

    /// The doubling constant `K`, equal to the exact ratio.
    pub fn k(&self) -> &BigRational {
        &self.ratio
    }

    pub fn ratio_f64(&self) -> f64 {
        self.sumset as f64 / self.n as f64
    }
}

pub fn doubling_report(l1: &IntMatrix, l2: &IntMatrix, a: &PointSet) -> Result<DoublingReport> {
    if a.is_empty() {
        return Err(Error::Empty("doubling report input"));
    }
    Ok(DoublingReport::new(a.len(), transform_sumset(l1, l2, a)?.len()))
}

/// `|A + L A| / |A|` for rational `L` with `L A ⊂ Z^d`.
pub fn doubling_report_rat(l: &RatMatrix, a: &PointSet) -> Result<DoublingReport> {
    if a.is_empty() {
        return Err(Error::Empty("doubling report input"));
    }
    let la = a.apply_rat(l)?;
    Ok(DoublingReport::new(a.len(), sumset(a, &la)?.len()))
}
