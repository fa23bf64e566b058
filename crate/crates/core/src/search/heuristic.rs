use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::Kernel;
use crate::error::Result;

const T_END: f64 = 0.05;

struct Best {
    size: usize,
    cells: Vec<usize>,
}

impl Best {
    fn offer(&mut self, k: &Kernel, size: usize, set: &[usize]) {
        if size > self.size {
            return;
        }
        let cells = k.normalize(set);
        if size < self.size || cells < self.cells {
            self.size = size;
            self.cells = cells;
        }
    }
}

fn scratch(k: &Kernel) -> (Vec<u32>, u32) {
    (vec![0; k.volume], 0)
}

/// Best of `samples` uniformly random `n`-subsets.
pub(crate) fn random(k: &Kernel, n: usize, samples: u64, seed: u64) -> Result<(usize, Vec<usize>, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut stamp, mut epoch) = scratch(k);
    let mut best = Best {
        size: usize::MAX,
        cells: Vec::new(),
    };
    for _ in 0..samples.max(1) {
        let mut set = sample(&mut rng, k.len(), n).into_vec();
        set.sort_unstable();
        let size = k.size_of(&set, &mut stamp, &mut epoch);
        best.offer(k, size, &set);
    }
    Ok((best.size, best.cells, samples.max(1)))
}

/// Simulated annealing over single-point swaps with geometric cooling.
pub(crate) fn anneal(k: &Kernel, n: usize, steps: u64, seed: u64) -> Result<(usize, Vec<usize>, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut stamp, mut epoch) = scratch(k);
    let mut set = sample(&mut rng, k.len(), n).into_vec();
    let mut inside = vec![false; k.len()];
    for &c in &set {
        inside[c] = true;
    }
    let mut size = k.size_of(&set, &mut stamp, &mut epoch);
    let mut best = Best {
        size: usize::MAX,
        cells: Vec::new(),
    };
    best.offer(k, size, &set);
    if n == k.len() {
        return Ok((best.size, best.cells, 1));
    }
    let t0 = n as f64 / 4.0 + 1.0;
    for step in 0..steps {
        let temp = t0 * (T_END / t0).powf(step as f64 / steps.max(1) as f64);
        let i = rng.gen_range(0..n);
        let fresh = loop {
            let c = rng.gen_range(0..k.len());
            if !inside[c] {
                break c;
            }
        };
        let old = set[i];
        set[i] = fresh;
        let cand = k.size_of(&set, &mut stamp, &mut epoch);
        let delta = cand as f64 - size as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
            inside[old] = false;
            inside[fresh] = true;
            size = cand;
            best.offer(k, size, &set);
        } else {
            set[i] = old;
        }
    }
    Ok((best.size, best.cells, steps + 1))
}
