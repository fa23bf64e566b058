use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::kernel::Kernel;
use crate::error::{Error, Result};

/// Best `(size, item)` packed as `size << 32 | item`, so the atomic minimum
/// orders by size and then by enumeration order.
struct Shared {
    best: AtomicU64,
    nodes: AtomicU64,
}

fn pack(size: usize, item: usize) -> u64 {
    (size as u64) << 32 | item as u64
}

struct Worker<'a> {
    k: &'a Kernel,
    n: usize,
    item: usize,
    shared: &'a Shared,
    counts: Vec<u32>,
    distinct: usize,
    chosen: Vec<usize>,
    face_count: Vec<u32>,
    best: Option<(usize, Vec<usize>)>,
    nodes: u64,
}

impl<'a> Worker<'a> {
    fn bump(&mut self, idx: usize) {
        if self.counts[idx] == 0 {
            self.distinct += 1;
        }
        self.counts[idx] += 1;
    }

    fn drop_one(&mut self, idx: usize) {
        self.counts[idx] -= 1;
        if self.counts[idx] == 0 {
            self.distinct -= 1;
        }
    }

    fn push(&mut self, x: usize) {
        let (ux, vx) = (self.k.u[x], self.k.v[x]);
        for j in 0..self.chosen.len() {
            let a = self.chosen[j];
            self.bump(ux + self.k.v[a]);
            self.bump(self.k.u[a] + vx);
        }
        self.bump(ux + vx);
        self.chosen.push(x);
        let f = self.k.faces[x];
        for (axis, c) in self.face_count.iter_mut().enumerate() {
            *c += (f >> axis & 1) as u32;
        }
    }

    fn pop(&mut self) {
        let x = self.chosen.pop().expect("nonempty");
        let (ux, vx) = (self.k.u[x], self.k.v[x]);
        self.drop_one(ux + vx);
        for j in 0..self.chosen.len() {
            let a = self.chosen[j];
            self.drop_one(ux + self.k.v[a]);
            self.drop_one(self.k.u[a] + vx);
        }
        let f = self.k.faces[x];
        for (axis, c) in self.face_count.iter_mut().enumerate() {
            *c -= (f >> axis & 1) as u32;
        }
    }

    /// A partial set can be abandoned once its sumset already exceeds the
    /// best size, or matches it while a lexicographically earlier witness
    /// of that size is known.
    fn pruned(&self) -> bool {
        let g = self.shared.best.load(Ordering::Relaxed);
        let (size, item) = ((g >> 32) as usize, (g & 0xffff_ffff) as usize);
        if self.distinct > size || (self.distinct == size && item <= self.item) {
            return true;
        }
        let missing = self.face_count.iter().filter(|&&c| c == 0).count();
        missing > self.n - self.chosen.len()
    }

    fn record(&mut self) {
        if self.face_count.contains(&0) {
            return;
        }
        let better = match &self.best {
            Some((s, _)) => self.distinct < *s,
            None => true,
        };
        if better {
            self.best = Some((self.distinct, self.chosen.clone()));
            self.shared.best.fetch_min(pack(self.distinct, self.item), Ordering::Relaxed);
        }
    }

    fn dfs(&mut self, start: usize) {
        self.nodes += 1;
        if self.chosen.len() == self.n {
            self.record();
            return;
        }
        let last = self.k.len() - (self.n - self.chosen.len());
        for x in start..=last {
            self.push(x);
            if !self.pruned() {
                self.dfs(x + 1);
            }
            self.pop();
        }
    }
}

/// Exact minimum with its canonical witness (cell indices) and the number
/// of search nodes visited.
pub(crate) fn run(k: &Kernel, n: usize, workers: Option<usize>) -> Result<(usize, Vec<usize>, u64)> {
    let shared = Shared {
        best: AtomicU64::new(u64::MAX),
        nodes: AtomicU64::new(0),
    };
    // the lexicographically first point of a normalized set lies on the
    // lower face of the first axis, which is a prefix of the cell order
    let first_face = k.cells.iter().take_while(|c| c[0] == k.lo[0]).count();
    let items: Vec<(usize, Option<usize>)> = if n == 1 {
        (0..first_face).map(|a| (a, None)).collect()
    } else {
        (0..first_face)
            .flat_map(|a| (a + 1..k.len()).map(move |b| (a, Some(b))))
            .collect()
    };
    if items.len() >= 1 << 32 {
        return Err(Error::BudgetExceeded("too many work items".into()));
    }
    let solve = |(item, &(a, b)): (usize, &(usize, Option<usize>))| -> Option<(usize, usize, Vec<usize>)> {
        let mut w = Worker {
            k,
            n,
            item,
            shared: &shared,
            counts: vec![0; k.volume],
            distinct: 0,
            chosen: Vec::with_capacity(n),
            face_count: vec![0; k.d],
            best: None,
            nodes: 0,
        };
        w.push(a);
        let mut start = a + 1;
        if let Some(b) = b {
            w.push(b);
            start = b + 1;
        }
        if !w.pruned() || w.chosen.len() == n {
            w.dfs(start);
        }
        shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
        w.best.map(|(s, c)| (s, item, c))
    };
    let run_all = || -> Vec<Option<(usize, usize, Vec<usize>)>> {
        items.par_iter().enumerate().map(solve).collect()
    };
    let results = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run_all),
        None => run_all(),
    };
    let (size, _, cells) = results
        .into_iter()
        .flatten()
        .min_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)))
        .ok_or_else(|| Error::Infeasible("no subset fits the box".into()))?;
    Ok((size, cells, shared.nodes.load(Ordering::Relaxed)))
}
