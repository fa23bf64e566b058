use std::collections::HashSet;

use rayon::prelude::*;

use super::{Point, PointSet};
use crate::error::{Error, Result};
use crate::IntMatrix;

const DENSE_LIMIT: u128 = 1 << 27;
const PARALLEL_PAIRS: usize = 1 << 20;

/// `A + B`.
pub fn sumset(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    a.check_dim(b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(PointSet::empty(a.dim()));
    }
    let (alo, ahi) = a.bounding_box().expect("nonempty");
    let (blo, bhi) = b.bounding_box().expect("nonempty");
    let d = a.dim();
    let mut lo = Vec::with_capacity(d);
    let mut ext = Vec::with_capacity(d);
    let mut volume: u128 = 1;
    for k in 0..d {
        let l = alo[k].checked_add(blo[k]).ok_or(Error::Overflow)?;
        let h = ahi[k].checked_add(bhi[k]).ok_or(Error::Overflow)?;
        let e = (h as i128 - l as i128 + 1) as u128;
        lo.push(l);
        ext.push(e);
        volume = volume.saturating_mul(e);
    }
    let pairs = (a.len() as u128) * (b.len() as u128);
    if volume <= DENSE_LIMIT && volume <= pairs.saturating_mul(64) {
        Ok(dense_sumset(a, b, &lo, &ext, volume as usize))
    } else {
        Ok(hashed_sumset(a, b))
    }
}

/// Bitmap over the bounding box of the sum, row-major with the first
/// coordinate most significant, so a scan yields lexicographic order.
fn dense_sumset(a: &PointSet, b: &PointSet, lo: &[i64], ext: &[u128], volume: usize) -> PointSet {
    let d = a.dim();
    let mut stride = vec![1usize; d];
    for k in (0..d.saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * ext[k + 1] as usize;
    }
    let offset = |p: &Point, base: &[i64]| -> usize {
        (0..d).map(|k| (p[k] - base[k]) as usize * stride[k]).sum()
    };
    let alo = a.bounding_box().expect("nonempty").0;
    let blo: Vec<i64> = lo.iter().zip(&alo).map(|(l, x)| l - x).collect();
    let boffs: Vec<usize> = b.iter().map(|p| offset(p, &blo)).collect();
    let mut bits = vec![0u64; volume.div_ceil(64)];
    for p in a.iter() {
        let base = offset(p, &alo);
        for &o in &boffs {
            let idx = base + o;
            bits[idx >> 6] |= 1 << (idx & 63);
        }
    }
    let mut points = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let t = word.trailing_zeros() as usize;
            word &= word - 1;
            let mut idx = w * 64 + t;
            let mut p = vec![0i64; d];
            for k in 0..d {
                p[k] = lo[k] + (idx / stride[k]) as i64;
                idx %= stride[k];
            }
            points.push(p);
        }
    }
    PointSet::from_sorted_unchecked(d, points)
}

fn hashed_sumset(a: &PointSet, b: &PointSet) -> PointSet {
    let add = |x: &Point, y: &Point| -> Point { x.iter().zip(y).map(|(s, t)| s + t).collect() };
    let set: HashSet<Point> = if a.len() * b.len() >= PARALLEL_PAIRS {
        a.points()
            .par_iter()
            .fold(HashSet::new, |mut acc, x| {
                acc.extend(b.iter().map(|y| add(x, y)));
                acc
            })
            .reduce(HashSet::new, |mut s, t| {
                if s.len() < t.len() {
                    return t.into_iter().chain(s).collect();
                }
                s.extend(t);
                s
            })
    } else {
        let mut s = HashSet::with_capacity(a.len() * b.len());
        for x in a.iter() {
            s.extend(b.iter().map(|y| add(x, y)));
        }
        s
    };
    let mut points: Vec<Point> = set.into_iter().collect();
    points.sort_unstable();
    PointSet::from_sorted_unchecked(a.dim(), points)
}

/// `L1 A + L2 A = {L1 a + L2 a' : a, a' in A}`.
pub fn transform_sumset(l1: &IntMatrix, l2: &IntMatrix, a: &PointSet) -> Result<PointSet> {
    sumset(&a.apply(l1)?, &a.apply(l2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(points: &[&[i64]]) -> PointSet {
        PointSet::from_points(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn naive(a: &PointSet, b: &PointSet) -> PointSet {
        let pts = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect()))
            .collect::<Vec<Point>>();
        PointSet::new(a.dim(), pts).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let a = ps(&[&[3, -1], &[0, 0]]);
        assert_eq!(sumset(&a, &ps(&[&[0, 0]])).unwrap(), a);
        let b = ps(&[&[0], &[1]]);
        assert_eq!(sumset(&b, &b).unwrap(), ps(&[&[0], &[1], &[2]]));
        let sq = ps(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(sumset(&sq, &sq).unwrap().len(), 9);
    }

    #[test]
    fn dense_and_hashed_agree() {
        let a = ps(&[&[0, 0], &[5, -3], &[2, 7], &[-4, 1]]);
        let b = ps(&[&[1, 1], &[-2, 0], &[100000, 3]]);
        let expected = naive(&a, &b);
        assert_eq!(hashed_sumset(&a, &b), expected);
        assert_eq!(sumset(&a, &b).unwrap(), expected);
        let c = ps(&[&[0, 0], &[1, 2], &[2, 1]]);
        let lo = vec![0, 0];
        let ext = vec![5u128, 5];
        assert_eq!(dense_sumset(&c, &c, &lo, &ext, 25), naive(&c, &c));
    }

    #[test]
    fn transform_sumset_examples() {
        let id = IntMatrix::identity(2);
        let a = ps(&[&[0, 0], &[1, 1]]);
        assert_eq!(transform_sumset(&id, &id, &a).unwrap().len(), 3);
        let rot = IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]).unwrap();
        let line = PointSet::new(2, (1..=5).map(|x| vec![0, x])).unwrap();
        assert_eq!(transform_sumset(&rot, &rot, &line).unwrap().len(), 9);
    }
}
