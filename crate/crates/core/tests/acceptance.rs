//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail
//! the run; if one of them starts passing the run fails instead, so the list
//! cannot go stale.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dilate::classify::{
    bound_coefficient, classify, default_h_tolerance, h_dominates_bound, h_value, is_coprime_pair,
    is_irreducible_pair, matrix_h_value,
};
use dilate::compression::{bm_defect, full_compress, is_compressed, CompressionBasis};
use dilate::constructions::{companion_pair, counterexample_pair, grid_box, kp_box, rot90, rot_line, skew_box};
use dilate::lattice::{trichotomy_group, trichotomy_l, trichotomy_pair, PairLattices};
use dilate::pointset::{plunnecke_check, project, ruzsa_triangle, transform_sumset};
use dilate::search::{
    closed_form_steps, final_constants_identity, iterated_sigma2, minimize, run_to_target, BootstrapState,
    SearchSpec, Strategy,
};
use dilate::{algebra::is_irreducible_q, BigInt, BigRational, GroupSubset, IntMatrix, IntPolynomial, Lattice, PointSet};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// The KP ratio at (140, 99) is 79968/13860 = 5.76970..., just below the
/// required window; see the project decisions log.
const KNOWN_FAILURES: &[usize] = &[4];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).unwrap()
}

fn identity(d: usize) -> IntMatrix {
    IntMatrix::identity(d)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_set(r: &mut ChaCha8Rng, d: usize, max_len: usize, lo: i64, hi: i64) -> PointSet {
    let len = r.gen_range(1..=max_len);
    let pts = (0..len).map(|_| (0..d).map(|_| r.gen_range(lo..=hi)).collect::<Vec<_>>());
    PointSet::new(d, pts).unwrap()
}

/// Exactly `len` distinct points.
fn random_set_of_size(r: &mut ChaCha8Rng, d: usize, len: usize, lo: i64, hi: i64) -> PointSet {
    let mut pts = BTreeSet::new();
    while pts.len() < len {
        pts.insert((0..d).map(|_| r.gen_range(lo..=hi)).collect::<Vec<_>>());
    }
    PointSet::new(d, pts).unwrap()
}

/// Brute-force sumset size, independent of the library kernels.
fn naive_sumset(a: &PointSet, b: &PointSet) -> BTreeSet<Vec<i64>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect()))
        .collect()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let (l1, l2) = counterexample_pair();
    for n in 1..=12i64 {
        let a = skew_box(n).map_err(err)?;
        let size = transform_sumset(&l1, &l2, &a).map_err(err)?.len() as i64;
        ensure!(size == (2 * n - 1).pow(2), "n={n}: sumset {size}, expected {}", (2 * n - 1).pow(2));
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(1), "took {t:?}");
    Ok(format!("(2n-1)^2 for n=1..12 in {t:?}"))
}

fn c2() -> Outcome {
    let r = rot90();
    for n in 1..=50i64 {
        let a = rot_line(n).map_err(err)?;
        let size = transform_sumset(&r, &r, &a).map_err(err)?.len() as i64;
        ensure!(size == 2 * n - 1, "n={n}: sumset {size}");
    }
    let irr = is_irreducible_pair(&r, &r).map_err(err)?;
    ensure!(!irr.irreducible, "rotation pair reported irreducible");
    let (l1, l2) = counterexample_pair();
    let cop = is_coprime_pair(&l1, &l2).map_err(err)?;
    ensure!(!cop.coprime, "diag/rotation pair reported coprime");
    ensure!(cop.c_prime == BigInt::from(1), "c' = {}", cop.c_prime);
    ensure!(cop.det_l1.abs() == BigInt::from(2), "det L1 = {}", cop.det_l1);
    Ok("2n-1 for n=1..50; rotation pair reducible; c' = 1 != 2".into())
}

fn c3() -> Outcome {
    let r = rot90();
    for n in 1..=30i64 {
        let a = grid_box(&[n, n]).map_err(err)?;
        let size = transform_sumset(&identity(2), &r, &a).map_err(err)?.len() as i64;
        ensure!(size == 4 * n * n - 4 * n + 1, "n={n}: sumset {size}");
    }
    Ok("4n^2 - 4n + 1 for n=1..30".into())
}

/// `lo <= 3 + 2 sqrt 2 <= hi`, decided exactly.
fn encloses_silver_square(lo: &BigRational, hi: &BigRational) -> bool {
    let three = BigRational::from_integer(3.into());
    let eight = BigRational::from_integer(8.into());
    let l = lo - &three;
    let h = hi - &three;
    let lo_ok = l.is_negative() || &l * &l <= eight;
    let hi_ok = !h.is_negative() && &h * &h >= eight;
    lo_ok && hi_ok
}

fn c4() -> Outcome {
    let f = IntPolynomial::from_i64(&[-2, 0, 1]);
    let c = companion_pair(&f).map_err(err)?;
    ensure!(c.l1 == identity(2) && c.l2 == m(&[&[0, 2], &[1, 0]]), "companion pair {} / {}", c.l1, c.l2);
    let report = classify(&c.l1, &c.l2).map_err(err)?;
    ensure!(report.irreducible && report.coprime == Some(true), "classification {:?} {:?}", report.irreducible, report.coprime);
    let width = BigRational::new(1.into(), BigInt::from(10).pow(12));
    let bound = bound_coefficient(&c.l1, &c.l2).map_err(err)?;
    let h = h_value(&f, &width).map_err(err)?.value;
    for (name, iv) in [("bound", &bound), ("H", &h)] {
        ensure!(iv.width() <= width, "{name} width {}", iv.width());
        ensure!(encloses_silver_square(iv.lo(), iv.hi()), "{name} misses (1+sqrt2)^2");
    }
    for mm in 2..=20i64 {
        for nn in 2..=20i64 {
            let a = kp_box(mm, nn).map_err(err)?;
            let size = transform_sumset(&c.l1, &c.l2, &a).map_err(err)?.len() as i64;
            let expected = (mm + 2 * nn - 2) * (mm + nn - 1);
            ensure!(size == expected, "KP ({mm},{nn}): {size} != {expected}");
        }
    }
    let a = kp_box(140, 99).map_err(err)?;
    let size = transform_sumset(&c.l1, &c.l2, &a).map_err(err)?.len();
    let ratio = BigRational::new(BigInt::from(size), BigInt::from(a.len()));
    let lo = BigRational::new(577.into(), 100.into());
    let hi = BigRational::new(583.into(), 100.into());
    let shown = ratio.to_f64().unwrap_or(f64::NAN);
    ensure!(
        lo <= ratio && ratio <= hi,
        "KP ratio at (140,99) = {ratio} = {shown:.5} outside [5.77, 5.83] (limit 5.82843)"
    );
    Ok(format!("certified to 1e-12; KP closed form for 2..20; ratio {shown:.5}"))
}

fn c5() -> Outcome {
    let start = Instant::now();
    let mut r = rng(5);
    for i in 0..500 {
        let d = r.gen_range(1..=3);
        let a = random_set(&mut r, d, 30, -4, 8);
        let b = random_set(&mut r, d, 30, -4, 8);
        let bm = bm_defect(&a, &b, &CompressionBasis::standard(d)).map_err(err)?;
        ensure!(bm.certified_nonnegative(), "random pair {i}: defect {:?}", bm.defect);
    }
    let cells: Vec<Vec<i64>> = (0..3).flat_map(|x| (0..3).map(move |y| vec![x, y])).collect();
    let subset = |mask: u32| PointSet::new(2, (0..9).filter(|i| mask >> i & 1 == 1).map(|i| cells[i].clone())).unwrap();
    let basis = CompressionBasis::standard(2);
    for _ in 0..10_000 {
        let (ma, mb) = (r.gen_range(1..512u32), r.gen_range(1..512u32));
        let bm = bm_defect(&subset(ma), &subset(mb), &basis).map_err(err)?;
        ensure!(bm.certified_nonnegative(), "subsets {ma:09b}, {mb:09b}: defect {:?}", bm.defect);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!("500 random + 10^4 subsets of [0,2]^2 in {t:?}"))
}

fn c6() -> Outcome {
    let mut r = rng(6);
    let basis = CompressionBasis::standard(2);
    let id = identity(2).to_rat();
    let subsets: [&[usize]; 4] = [&[], &[0], &[1], &[0, 1]];
    for i in 0..200 {
        let a = random_set(&mut r, 2, 25, 0, 4);
        let b = random_set(&mut r, 2, 25, 0, 4);
        let ca = full_compress(&a, &basis).map_err(err)?;
        let cb = full_compress(&b, &basis).map_err(err)?;
        ensure!(ca.len() == a.len() && cb.len() == b.len(), "pair {i}: size changed");
        ensure!(full_compress(&ca, &basis).map_err(err)? == ca, "pair {i}: not idempotent");
        ensure!(is_compressed(&ca).map_err(err)? && is_compressed(&cb).map_err(err)?, "pair {i}: not down-closed");
        let before = PointSet::new(2, naive_sumset(&a, &b)).unwrap();
        let after = PointSet::new(2, naive_sumset(&ca, &cb)).unwrap();
        for s in subsets {
            let pa = project(&after, s, &id).map_err(err)?.len();
            let pb = project(&before, s, &id).map_err(err)?.len();
            ensure!(pa <= pb, "pair {i}, S={s:?}: {pa} > {pb}");
        }
    }
    Ok("200 pairs in [0,4]^2".into())
}

fn random_matrix(r: &mut ChaCha8Rng, d: usize, max_det: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| r.gen_range(-4..=4)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
        let mat = m(&refs);
        let det = mat.det().abs();
        if !det.is_zero() && det <= BigInt::from(max_det) {
            return mat;
        }
    }
}

/// Cofactor expansion on `i64`, for the brute-force oracle.
fn small(mat: &IntMatrix) -> Vec<Vec<i64>> {
    mat.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
}

fn det_i64(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * det_i64(&minor)
        })
        .sum()
}

fn adjugate(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = if n == 1 { 1 } else { sign * det_i64(&minor) };
        }
    }
    adj
}

/// `[Z^d : M Z^d]` counted as `D^d / |M Z^d ∩ [0, D)^d|` with `D = |det M|`;
/// membership is `adj(M) x ≡ 0 (mod det M)`.
fn brute_index(mat: &IntMatrix) -> u64 {
    let a = small(mat);
    let d = a.len();
    let det = det_i64(&a);
    let side = det.abs();
    let adj = adjugate(&a);
    let total = side.pow(d as u32);
    let mut inside = 0u64;
    for code in 0..total {
        let mut c = code;
        let x: Vec<i64> = (0..d)
            .map(|_| {
                let v = c % side;
                c /= side;
                v
            })
            .collect();
        if adj.iter().all(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() % det == 0) {
            inside += 1;
        }
    }
    total as u64 / inside
}

fn random_irreducible(r: &mut ChaCha8Rng) -> IntPolynomial {
    loop {
        let deg = r.gen_range(2..=3);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| r.gen_range(-5..=5)).collect();
        coeffs.push(r.gen_range(1..=4));
        let f = IntPolynomial::from_i64(&coeffs);
        if f.is_primitive() && is_irreducible_q(&f).unwrap_or(false) {
            return f;
        }
    }
}

fn random_coprime_pairs(seed: u64, count: usize) -> Result<Vec<(IntMatrix, IntMatrix)>, String> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let c = companion_pair(&random_irreducible(&mut r)).map_err(err)?;
        if is_coprime_pair(&c.l1, &c.l2).map_err(err)?.coprime {
            out.push((c.l1, c.l2));
        }
    }
    Ok(out)
}

fn c7() -> Outcome {
    let mut r = rng(7);
    let mats: Vec<IntMatrix> = (0..100).map(|i| random_matrix(&mut r, if i < 50 { 2 } else { 3 }, 64)).collect();
    for mat in &mats {
        let lat = Lattice::from_generators(mat).map_err(err)?;
        let brute = brute_index(mat);
        ensure!(lat.index() == BigInt::from(brute), "{mat}: index {} vs brute {brute}", lat.index());
        ensure!(mat.det().abs() == BigInt::from(brute), "{mat}: |det| {} vs brute {brute}", mat.det());
    }
    let mut multiplicative = 0;
    for pair in mats.chunks(2) {
        let (a, b) = (Lattice::from_generators(&pair[0]).map_err(err)?, Lattice::from_generators(&pair[1]).map_err(err)?);
        if a.sum(&b).map_err(err)?.is_standard() {
            let meet = a.intersect(&b).map_err(err)?;
            ensure!(meet.index() == a.index() * b.index(), "{a} and {b}: intersection index {}", meet.index());
            multiplicative += 1;
        }
    }
    ensure!(multiplicative > 0, "no pair with lattice sum Z^d");
    for (l1, l2) in random_coprime_pairs(71, 20)? {
        let pair = PairLattices::new(&l1, &l2).map_err(err)?;
        ensure!(pair.p_lattice.index() == &pair.p * &pair.q, "{l1} / {l2}: [Z^d : P] = {}", pair.p_lattice.index());
        let (phi1, phi2) = pair.induced_maps().map_err(err)?;
        ensure!(phi1.sum(&phi2).map_err(err)?.is_isomorphism(), "{l1} / {l2}: phi1 + phi2 not an isomorphism");
    }
    Ok(format!("100 indices; {multiplicative} intersections; 20 coprime pairs"))
}

fn all_subsets_with_zero(group: &Arc<dilate::QuotientGroup>) -> Vec<GroupSubset> {
    let elems = group.elements();
    let rest = &elems[1..];
    (0u64..1 << rest.len())
        .map(|mask| {
            let chosen = rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone());
            GroupSubset::new(group.clone(), std::iter::once(elems[0].clone()).chain(chosen))
        })
        .collect()
}

fn c8() -> Outcome {
    let mats = [
        m(&[&[0, 2], &[1, 0]]),
        m(&[&[2, 0], &[0, 1]]),
        m(&[&[1, 1], &[-1, 1]]),
        m(&[&[2, 1], &[0, 2]]),
    ];
    let mut checked = 0usize;
    for l in &mats {
        let g = trichotomy_group(l).map_err(err)?;
        ensure!(g.order() <= 16, "{l}: |G| = {}", g.order());
        for x in all_subsets_with_zero(&g) {
            let cases = trichotomy_l(&x, l).map_err(|e| format!("{l}, X = {x}: {e}"))?;
            ensure!(!cases.is_empty(), "{l}, X = {x}: no case");
            checked += 1;
        }
    }
    let pair = PairLattices::new(&identity(2), &m(&[&[0, 2], &[1, 0]])).map_err(err)?;
    let (phi1, phi2) = pair.induced_maps().map_err(err)?;
    let g = pair.source_group();
    ensure!(g.order() == 2, "pair group order {}", g.order());
    for x in all_subsets_with_zero(&g) {
        let cases = trichotomy_pair(&x, &phi1, &phi2, &pair.p_lattice).map_err(|e| format!("pair, X = {x}: {e}"))?;
        ensure!(!cases.is_empty(), "pair, X = {x}: no case");
        checked += 1;
    }
    Ok(format!("{checked} subsets, every case set nonempty"))
}

fn c9() -> Outcome {
    let mut r = rng(9);
    for i in 0..300 {
        let d = r.gen_range(1..=2);
        let (a1, a2, a3) = (random_set(&mut r, d, 15, -6, 6), random_set(&mut r, d, 15, -6, 6), random_set(&mut r, d, 15, -6, 6));
        let rc = ruzsa_triangle(&a1, &a2, &a3).map_err(err)?;
        let (s23, s12, s13) = (naive_sumset(&a2, &a3).len(), naive_sumset(&a1, &a2).len(), naive_sumset(&a1, &a3).len());
        ensure!((rc.a2_plus_a3, rc.a1_plus_a2, rc.a1_plus_a3) == (s23, s12, s13), "instance {i}: sumset sizes disagree");
        ensure!(rc.holds && a1.len() * s23 <= s12 * s13, "Ruzsa instance {i} violated");
    }
    for i in 0..300 {
        let d = r.gen_range(1..=2);
        let len = r.gen_range(1..=15);
        let (a, b) = (random_set_of_size(&mut r, d, len, -10, 10), random_set_of_size(&mut r, d, len, -10, 10));
        let pc = plunnecke_check(&a, &b).map_err(err)?;
        let c = PointSet::new(d, naive_sumset(&a, &b)).unwrap();
        let cc = naive_sumset(&c, &c).len();
        ensure!(pc.c == c.len() && pc.c_plus_c == cc, "instance {i}: sumset sizes disagree");
        // |C+C| <= (|C|/|A|)^6 |C|
        let lhs = BigInt::from(cc) * BigInt::from(a.len()).pow(6);
        let rhs = BigInt::from(c.len()).pow(7);
        ensure!(pc.holds && lhs <= rhs, "Plunnecke instance {i} violated");
    }
    Ok("300 Ruzsa + 300 Plunnecke instances".into())
}

fn c10() -> Outcome {
    let start = Instant::now();
    let one = m(&[&[1]]);
    let two = m(&[&[2]]);
    let mut cases = Vec::new();
    for n in 2..=6usize {
        cases.push((SearchSpec::new(one.clone(), two.clone(), n, vec![(0, 12)], Strategy::Exhaustive), 3 * n - 2));
    }
    cases.push((SearchSpec::new(identity(2), rot90(), 4, vec![(0, 3), (0, 3)], Strategy::Exhaustive), 9));
    for (spec, expected) in cases {
        let serial = minimize(&spec.clone().with_workers(1)).map_err(err)?;
        let parallel = minimize(&spec.clone().with_workers(8)).map_err(err)?;
        ensure!(serial.exact, "n={}: not exact", spec.n);
        ensure!(serial.minimum == expected, "n={}: minimum {} != {expected}", spec.n, serial.minimum);
        ensure!(serial == parallel, "n={}: 1 and 8 workers differ", spec.n);
        let naive = naive_sumset(&serial.witness.apply(&spec.l1).map_err(err)?, &serial.witness.apply(&spec.l2).map_err(err)?);
        ensure!(naive.len() == expected, "n={}: witness gives {}", spec.n, naive.len());
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(300), "took {t:?}");
    Ok(format!("3n-2 for n=2..6, rot90 n=4 -> 9, 1 = 8 workers, {t:?}"))
}

fn c11() -> Outcome {
    let (closed, _) = final_constants_identity(2, 2, 0.1, 1.0, 1.0, 1.0).map_err(err)?;
    // sigma1 (log 4 - log 3) / (2 log 5), evaluated independently
    let oracle = 0.1 * (4f64.ln() - 3f64.ln()) / (2.0 * 5f64.ln());
    ensure!((closed - oracle).abs() < 1e-12, "closed form {closed} vs {oracle}");
    ensure!((closed - 0.0089378).abs() < 1e-6, "closed form {closed} vs 0.0089378");
    let iterated = iterated_sigma2(2, 0.1, 1e7).map_err(err)?;
    ensure!((closed - iterated).abs() < 1e-6, "closed {closed} vs iterated {iterated}");
    let mut r = rng(11);
    for _ in 0..20 {
        let alpha0: f64 = r.gen_range(0.01..0.99);
        let eps: f64 = 10f64.powf(r.gen_range(-6.0..-2.5));
        let k: u64 = r.gen_range(2..=5);
        let state = BootstrapState::identity(2, k, alpha0, 1.0, 0.1, 1.0).map_err(err)?;
        let steps = run_to_target(&state, eps, 10_000_000).map_err(err)?.len() as i64 - 1;
        let k2 = (k * k) as f64;
        let ceiling = ((alpha0 / eps).ln() / (k2 / (k2 - 1.0)).ln()).ceil() as i64;
        ensure!((steps - ceiling).abs() <= 1, "alpha0={alpha0} eps={eps} k={k}: {steps} vs {ceiling}");
        let lib = closed_form_steps(alpha0, eps, k) as i64;
        ensure!((steps - lib).abs() <= 1, "alpha0={alpha0} eps={eps} k={k}: {steps} vs library {lib}");
    }
    Ok(format!("sigma2 closed {closed:.7}, iterated {iterated:.7}; 20 step counts"))
}

fn c12() -> Outcome {
    let tol = default_h_tolerance();
    let mut strict = 0;
    for (l1, l2) in random_coprime_pairs(12, 50)? {
        let h = matrix_h_value(&l1, &l2, &tol).map_err(err)?;
        let bound = bound_coefficient(&l1, &l2).map_err(err)?;
        let (p, q) = (l1.det().abs(), l2.det().abs());
        ensure!(h_dominates_bound(&h, &p, &q, &bound), "{l1} / {l2}: H {:?} vs bound {:?}", h.value, bound);
        if bound.hi() < h.value.lo() {
            strict += 1;
        }
    }
    Ok(format!("50 coprime pairs, {strict} strict"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("skew-box counterexample", c1),
        ("rotation counterexample", c2),
        ("rotation error term", c3),
        ("sqrt2 pipeline", c4),
        ("Brunn-Minkowski defect", c5),
        ("compression laws", c6),
        ("lattice suite", c7),
        ("trichotomy exhaustion", c8),
        ("additive inequalities", c9),
        ("search oracle", c10),
        ("bootstrap calculator", c11),
        ("Holder consistency", c12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut bad = 0;
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let known = KNOWN_FAILURES.contains(&id);
        match outcome {
            Ok(detail) => {
                passed += 1;
                println!("criterion {id:>2} PASS  {name}: {detail}");
                if known {
                    println!("             listed as a known failure but passed; update KNOWN_FAILURES");
                    bad += 1;
                }
            }
            Err(why) => {
                let tag = if known { " (known)" } else { "" };
                println!("criterion {id:>2} FAIL{tag}  {name}: {why}");
                if !known {
                    bad += 1;
                }
            }
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
