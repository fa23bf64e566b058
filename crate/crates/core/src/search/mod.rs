//! Minimization of `|L1 A + L2 A|` over `n`-subsets of a box, exhaustive or
//! heuristic, and the deficit recursions of the bootstrap argument.

mod bootstrap;
mod exhaustive;
mod heuristic;
mod kernel;

pub use bootstrap::{
    bootstrap_step_identity, bootstrap_step_pair, closed_form_steps, final_constants_identity,
    iterated_sigma2, pair_constant_c, run_to_target, BootstrapMode, BootstrapState,
};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::IntMatrix;

/// Largest `C(volume, n)` accepted by the exhaustive strategy.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Random { samples: u64, seed: u64 },
    Anneal { steps: u64, seed: u64 },
}

impl FromStr for Strategy {
    type Err = Error;

    /// `exhaustive`, `random:COUNT:SEED` or `anneal:STEPS:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse(format!("strategy {s:?}: {e}")))
        };
        match parts.as_slice() {
            ["exhaustive"] => Ok(Strategy::Exhaustive),
            ["random", c, seed] => Ok(Strategy::Random {
                samples: num(c)?,
                seed: num(seed)?,
            }),
            ["anneal", c, seed] => Ok(Strategy::Anneal {
                steps: num(c)?,
                seed: num(seed)?,
            }),
            _ => Err(Error::Parse(format!(
                "strategy {s:?}: expected exhaustive, random:COUNT:SEED or anneal:STEPS:SEED"
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => write!(f, "exhaustive"),
            Strategy::Random { samples, seed } => write!(f, "random:{samples}:{seed}"),
            Strategy::Anneal { steps, seed } => write!(f, "anneal:{steps}:{seed}"),
        }
    }
}

/// What to minimize: `|L1 A + L2 A|` over `A` of size `n` inside the box
/// `prod [lo_k, hi_k]` (inclusive bounds).
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub l1: IntMatrix,
    pub l2: IntMatrix,
    pub n: usize,
    pub bounds: Vec<(i64, i64)>,
    pub strategy: Strategy,
    /// Worker threads for the exhaustive strategy; `None` uses all cores.
    pub workers: Option<usize>,
}

impl SearchSpec {
    pub fn new(l1: IntMatrix, l2: IntMatrix, n: usize, bounds: Vec<(i64, i64)>, strategy: Strategy) -> Self {
        SearchSpec {
            l1,
            l2,
            n,
            bounds,
            strategy,
            workers: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn volume(&self) -> u128 {
        self.bounds
            .iter()
            .map(|&(lo, hi)| (hi as i128 - lo as i128 + 1).max(0) as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    fn validate(&self) -> Result<()> {
        let d = self.bounds.len();
        for m in [&self.l1, &self.l2] {
            if !m.is_square() || m.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.rows(),
                });
            }
        }
        if d == 0 {
            return Err(Error::InvalidParameter("box has no coordinates".into()));
        }
        if let Some(&(lo, hi)) = self.bounds.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidParameter(format!("empty box range {lo}:{hi}")));
        }
        if self.n == 0 {
            return Err(Error::Infeasible("n must be at least 1".into()));
        }
        if self.n as u128 > self.volume() {
            return Err(Error::Infeasible(format!(
                "n = {} exceeds box volume {}",
                self.n,
                self.volume()
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidParameter("workers must be positive".into()));
        }
        Ok(())
    }
}

/// Parses `"x0:x1,y0:y1"` into inclusive per-axis bounds.
pub fn parse_box(s: &str) -> Result<Vec<(i64, i64)>> {
    s.split(',')
        .map(|r| {
            let (a, b) = r
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("box range {r:?}: expected LO:HI")))?;
            let p = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("box range {r:?}: {e}")))
            };
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

/// Best set found. Among sets of minimal size the witness is the
/// lexicographically least one whose minimum along every axis sits on the
/// lower face of the box.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub minimum: usize,
    #[serde(serialize_with = "serialize_points")]
    pub witness: PointSet,
    pub exact: bool,
    #[serde(skip)]
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SearchResult {
    /// Schedule-independent fields only.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.minimum == other.minimum && self.witness == other.witness && self.exact == other.exact
    }
}

fn serialize_points<S: serde::Serializer>(p: &PointSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.points().serialize(s)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
        if r == u128::MAX {
            break;
        }
    }
    r
}

pub fn minimize(spec: &SearchSpec) -> Result<SearchResult> {
    spec.validate()?;
    let start = Instant::now();
    let kernel = kernel::Kernel::new(spec)?;
    let (minimum, cells, nodes, exact) = match spec.strategy {
        Strategy::Exhaustive => {
            let count = binomial(spec.volume(), spec.n as u128);
            if count > EXHAUSTIVE_LIMIT {
                return Err(Error::BudgetExceeded(format!(
                    "C({}, {}) = {count} subsets exceeds {EXHAUSTIVE_LIMIT}",
                    spec.volume(),
                    spec.n
                )));
            }
            let (m, c, nodes) = exhaustive::run(&kernel, spec.n, spec.workers)?;
            (m, c, nodes, true)
        }
        Strategy::Random { samples, seed } => {
            let (m, c, nodes) = heuristic::random(&kernel, spec.n, samples, seed)?;
            (m, c, nodes, false)
        }
        Strategy::Anneal { steps, seed } => {
            let (m, c, nodes) = heuristic::anneal(&kernel, spec.n, steps, seed)?;
            (m, c, nodes, false)
        }
    };
    Ok(SearchResult {
        n: spec.n,
        minimum,
        witness: kernel.point_set(&cells),
        exact,
        nodes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(k: i64) -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[k]]).unwrap()
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("exhaustive".parse::<Strategy>().unwrap(), Strategy::Exhaustive);
        assert_eq!(
            "random:10:7".parse::<Strategy>().unwrap(),
            Strategy::Random { samples: 10, seed: 7 }
        );
        assert_eq!(
            "anneal:5:1".parse::<Strategy>().unwrap().to_string(),
            "anneal:5:1"
        );
        assert!("random:10".parse::<Strategy>().is_err());
        assert_eq!(parse_box("0:3,-1:2").unwrap(), vec![(0, 3), (-1, 2)]);
        assert!(parse_box("0-3").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(13, 4), 715);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn dilate_minimum() {
        let spec = SearchSpec::new(scalar(1), scalar(2), 4, vec![(0, 12)], Strategy::Exhaustive);
        let r = minimize(&spec).unwrap();
        assert_eq!(r.minimum, 10);
        assert_eq!(r.witness, PointSet::new(1, (0..4).map(|x| vec![x])).unwrap());
        assert!(r.exact);
    }

    #[test]
    fn rotation_minimum() {
        let rot = crate::constructions::rot90();
        let spec = SearchSpec::new(IntMatrix::identity(2), rot, 4, vec![(0, 3), (0, 3)], Strategy::Exhaustive);
        let r = minimize(&spec).unwrap();
        assert_eq!(r.minimum, 9);
        assert_eq!(r.witness, crate::constructions::grid_box(&[2, 2]).unwrap());
    }

    #[test]
    fn singleton_and_infeasible() {
        let spec = SearchSpec::new(scalar(1), scalar(3), 1, vec![(0, 4)], Strategy::Exhaustive);
        assert_eq!(minimize(&spec).unwrap().minimum, 1);
        let spec = SearchSpec::new(scalar(1), scalar(3), 6, vec![(0, 4)], Strategy::Exhaustive);
        assert!(matches!(minimize(&spec), Err(Error::Infeasible(_))));
        let spec = SearchSpec::new(scalar(1), scalar(3), 20, vec![(0, 60)], Strategy::Exhaustive);
        assert!(matches!(minimize(&spec), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn heuristics_respect_exact_minimum() {
        let exact = minimize(&SearchSpec::new(scalar(1), scalar(2), 5, vec![(0, 12)], Strategy::Exhaustive))
            .unwrap()
            .minimum;
        for strategy in [
            Strategy::Random { samples: 300, seed: 3 },
            Strategy::Anneal { steps: 2000, seed: 3 },
        ] {
            let spec = SearchSpec::new(scalar(1), scalar(2), 5, vec![(0, 12)], strategy);
            let r = minimize(&spec).unwrap();
            assert!(r.minimum >= exact);
            assert!(!r.exact);
            let again = minimize(&spec).unwrap();
            assert_eq!(r, again);
            let check = crate::pointset::transform_sumset(&spec.l1, &spec.l2, &r.witness).unwrap();
            assert_eq!(check.len(), r.minimum);
        }
    }
}
