use crate::error::{Error, Result};
use crate::pointset::{apply_small, small_matrix, Point, PointSet};

use super::SearchSpec;

const MAX_SUM_VOLUME: u128 = 1 << 28;

/// Box cells in lexicographic order with the images under `L1` and `L2`
/// flattened so that `L1 a + L2 b` has grid index `u[a] + v[b]`.
pub(crate) struct Kernel {
    pub d: usize,
    pub lo: Vec<i64>,
    pub side: Vec<i64>,
    pub cells: Vec<Point>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub volume: usize,
    /// Bit `k` set when the cell lies on the lower face of axis `k`.
    pub faces: Vec<u64>,
}

impl Kernel {
    pub fn new(spec: &SearchSpec) -> Result<Self> {
        let d = spec.bounds.len();
        if d > 63 {
            return Err(Error::InvalidParameter("at most 63 coordinates".into()));
        }
        let lo: Vec<i64> = spec.bounds.iter().map(|b| b.0).collect();
        let side: Vec<i64> = spec.bounds.iter().map(|b| b.1 - b.0 + 1).collect();
        let mut cells: Vec<Point> = vec![Vec::new()];
        for k in 0..d {
            cells = cells
                .into_iter()
                .flat_map(|p| {
                    (spec.bounds[k].0..=spec.bounds[k].1).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        let m1 = small_matrix(&spec.l1, d)?;
        let m2 = small_matrix(&spec.l2, d)?;
        let p1: Vec<Point> = cells.iter().map(|c| apply_small(&m1, c)).collect::<Result<_>>()?;
        let p2: Vec<Point> = cells.iter().map(|c| apply_small(&m2, c)).collect::<Result<_>>()?;
        let range = |ps: &[Point], k: usize| {
            let it = ps.iter().map(|p| p[k]);
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let mut min1 = vec![0; d];
        let mut min2 = vec![0; d];
        let mut ext = vec![0u128; d];
        let mut volume: u128 = 1;
        for k in 0..d {
            let (a, b) = range(&p1, k);
            let (c, e) = range(&p2, k);
            min1[k] = a;
            min2[k] = c;
            ext[k] = ((b - a) as i128 + (e - c) as i128 + 1) as u128;
            volume = volume.saturating_mul(ext[k]);
        }
        if volume > MAX_SUM_VOLUME {
            return Err(Error::BudgetExceeded(format!(
                "sumset bounding box has {volume} cells"
            )));
        }
        let mut stride = vec![1usize; d];
        for k in (0..d.saturating_sub(1)).rev() {
            stride[k] = stride[k + 1] * ext[k + 1] as usize;
        }
        let flat = |p: &Point, base: &[i64]| -> usize {
            (0..d).map(|k| (p[k] - base[k]) as usize * stride[k]).sum()
        };
        let u = p1.iter().map(|p| flat(p, &min1)).collect();
        let v = p2.iter().map(|p| flat(p, &min2)).collect();
        let faces = cells
            .iter()
            .map(|c| (0..d).filter(|&k| c[k] == lo[k]).fold(0u64, |m, k| m | 1 << k))
            .collect();
        Ok(Kernel {
            d,
            lo,
            side,
            cells,
            u,
            v,
            volume: volume as usize,
            faces,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn index_of(&self, p: &[i64]) -> usize {
        (0..self.d).fold(0usize, |acc, k| acc * self.side[k] as usize + (p[k] - self.lo[k]) as usize)
    }

    /// `|L1 A + L2 A|` for cell indices `set`; `stamp` is scratch space of
    /// length `volume` whose entries must stay below `*epoch`.
    pub fn size_of(&self, set: &[usize], stamp: &mut [u32], epoch: &mut u32) -> usize {
        *epoch = epoch.wrapping_add(1);
        if *epoch == 0 {
            stamp.iter_mut().for_each(|s| *s = 0);
            *epoch = 1;
        }
        let mut count = 0;
        for &a in set {
            for &b in set {
                let idx = self.u[a] + self.v[b];
                if stamp[idx] != *epoch {
                    stamp[idx] = *epoch;
                    count += 1;
                }
            }
        }
        count
    }

    /// The translate of `set` touching every lower face, as sorted indices.
    pub fn normalize(&self, set: &[usize]) -> Vec<usize> {
        let mut shift = vec![i64::MAX; self.d];
        for &c in set {
            for k in 0..self.d {
                shift[k] = shift[k].min(self.cells[c][k] - self.lo[k]);
            }
        }
        let mut out: Vec<usize> = set
            .iter()
            .map(|&c| {
                let p: Point = (0..self.d).map(|k| self.cells[c][k] - shift[k]).collect();
                self.index_of(&p)
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn point_set(&self, set: &[usize]) -> PointSet {
        PointSet::new(self.d, set.iter().map(|&c| self.cells[c].clone())).expect("cells share dimension")
    }
}
