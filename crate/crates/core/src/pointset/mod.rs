//! Finite subsets of `Z^d`, sumsets `L1 A + L2 A`, coset partitions,
//! projections and the additive inequalities used as test properties.

mod measure;
mod sumset;

pub use measure::{
    basis_coordinates, coset_partition, doubling_report, doubling_report_rat, max_in_translate, plunnecke_check,
    project, ruzsa_triangle, ruzsa_triangle_holds, CosetPartition, DoublingReport, PlunneckeCheck,
    RuzsaCheck, SubspaceBasis,
};
pub use sumset::{sumset, transform_sumset};
pub(crate) use measure::project_coordinates;

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::{IntMatrix, RatMatrix};

pub type Point = Vec<i64>;

/// A finite subset of `Z^d`; points are kept sorted lexicographically and
/// deduplicated, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    d: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(d: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { d, points })
    }

    /// Dimension taken from the first point; `points` must be nonempty.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let d = points.first().ok_or(Error::Empty("point set"))?.len();
        Self::new(d, points)
    }

    pub(crate) fn from_sorted_unchecked(d: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { d, points }
    }

    pub fn empty(d: usize) -> Self {
        PointSet { d, points: Vec::new() }
    }

    pub fn singleton(p: Point) -> Self {
        PointSet { d: p.len(), points: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub(crate) fn check_dim(&self, other: &PointSet) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        Ok(())
    }

    /// Coordinatewise minimum and maximum; `None` when empty.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = self.points.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in &self.points {
            for k in 0..self.d {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Some((lo, hi))
    }

    pub fn translate(&self, t: &[i64]) -> Result<PointSet> {
        if t.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: t.len(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(t)
                    .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
                    .collect::<Result<Point>>()
            })
            .collect::<Result<Vec<_>>>()?;
        // translation preserves lexicographic order
        Ok(PointSet::from_sorted_unchecked(self.d, points))
    }

    /// `{M a : a in A}` for a square integer matrix.
    pub fn apply(&self, m: &IntMatrix) -> Result<PointSet> {
        let m = small_matrix(m, self.d)?;
        let points = self
            .points
            .iter()
            .map(|p| apply_small(&m, p))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.d, points)
    }

    /// `{M a : a in A}` for a rational matrix; every image must be integral.
    pub fn apply_rat(&self, m: &RatMatrix) -> Result<PointSet> {
        if !m.is_square() || m.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: m.rows(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                let v: Vec<_> = p.iter().map(|&x| crate::scalar::rat(x, 1)).collect();
                m.mul_vec(&v)
                    .iter()
                    .map(|x| {
                        if !x.is_integer() {
                            return Err(Error::NonIntegral(format!("image of {p:?} is not integral")));
                        }
                        x.to_integer().to_i64().ok_or(Error::Overflow)
                    })
                    .collect::<Result<Point>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.d, points)
    }

    /// One point per line, comma-separated, in lexicographic order.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            s.push_str(&parts.join(","));
            s.push('\n');
        }
        s
    }

    /// Parses the point-set file format: one point per line, `#` starts a
    /// comment, blank lines are skipped, dimension fixed by the first point.
    pub fn parse(text: &str) -> Result<PointSet> {
        let mut d = None;
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = line
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Parse(format!("line {}: {:?}: {e}", lineno + 1, t.trim())))
                })
                .collect::<Result<Point>>()?;
            match d {
                None => d = Some(p.len()),
                Some(k) if k != p.len() => {
                    return Err(Error::Parse(format!(
                        "line {}: expected {k} coordinates, found {}",
                        lineno + 1,
                        p.len()
                    )))
                }
                _ => {}
            }
            points.push(p);
        }
        let d = d.ok_or(Error::Empty("point set file"))?;
        PointSet::new(d, points)
    }
}

impl FromStr for PointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointSet::parse(s)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let c: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet<{}>{}", self.d, self)
    }
}

pub(crate) fn small_matrix(m: &IntMatrix, d: usize) -> Result<Vec<Vec<i64>>> {
    if !m.is_square() || m.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: m.rows(),
        });
    }
    (0..d)
        .map(|i| m.row(i).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
        .collect()
}

pub(crate) fn apply_small(m: &[Vec<i64>], p: &[i64]) -> Result<Point> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(p)
                .try_fold(0i64, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
                .ok_or(Error::Overflow)
        })
        .collect()
}
