//! Column echelon / Hermite and Smith normal forms over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::IntMatrix;

/// Result of unimodular column reduction `A * U = H`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    /// Reduced matrix; pivot columns first (ordered by pivot row), zero
    /// columns after.
    pub reduced: IntMatrix,
    /// Unimodular column transform with `input * transform = reduced`.
    pub transform: IntMatrix,
    /// Row index of the pivot of each leading column of `reduced`.
    pub pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Unimodular column reduction that eliminates from the bottom row upward.
///
/// Pivot columns end up upper-triangular in the sense that the pivot for row
/// `i` has zeros in every row below `i`, its pivot entry is positive, and the
/// entries of later pivot columns in row `i` are reduced into `[0, pivot)`.
pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let rows = a.rows();
    let n = a.cols();
    let mut cols = a.columns();
    let mut trans = IntMatrix::identity(n).columns();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    for r in (0..rows).rev() {
        loop {
            let nonzero: Vec<usize> = active.iter().copied().filter(|&c| !cols[c][r].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&p) = nonzero.first() {
                    if cols[p][r].is_negative() {
                        negate(&mut cols[p]);
                        negate(&mut trans[p]);
                    }
                    pivots.push((r, p));
                    active.retain(|&c| c != p);
                }
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&x, &&y| cols[x][r].abs().cmp(&cols[y][r].abs()).then(x.cmp(&y)))
                .unwrap();
            for &c in &nonzero {
                if c == p {
                    continue;
                }
                let q = cols[c][r].div_floor(&cols[p][r]);
                axpy(&mut cols, c, p, &q);
                axpy(&mut trans, c, p, &q);
            }
        }
    }

    // pivots were found bottom-up; order them by increasing row
    pivots.reverse();
    // reduce the entries of later pivot columns in row r, bottom row first so
    // that each reduction only disturbs rows not yet visited
    for (k, &(r, p)) in pivots.iter().enumerate().rev() {
        for &(_, later) in &pivots[k + 1..] {
            let q = cols[later][r].div_floor(&cols[p][r]);
            if !q.is_zero() {
                axpy(&mut cols, later, p, &q);
                axpy(&mut trans, later, p, &q);
            }
        }
    }

    let order: Vec<usize> = pivots.iter().map(|&(_, p)| p).chain(active.iter().copied()).collect();
    let reduced_cols: Vec<Vec<BigInt>> = order.iter().map(|&c| cols[c].clone()).collect();
    let trans_cols: Vec<Vec<BigInt>> = order.iter().map(|&c| trans[c].clone()).collect();
    let reduced = if reduced_cols.is_empty() {
        IntMatrix::zeros(rows, 0)
    } else {
        IntMatrix::from_columns(&reduced_cols).expect("consistent column lengths")
    };
    ColumnEchelon {
        reduced,
        transform: IntMatrix::from_columns(&trans_cols).expect("consistent column lengths"),
        pivot_rows: pivots.iter().map(|&(r, _)| r).collect(),
    }
}

// cols[c] -= q * cols[p]
fn axpy(cols: &mut [Vec<BigInt>], c: usize, p: usize, q: &BigInt) {
    let (src, dst) = if c < p {
        let (lo, hi) = cols.split_at_mut(p);
        (&hi[0], &mut lo[c])
    } else {
        let (lo, hi) = cols.split_at_mut(c);
        (&lo[p], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v {
        *x = -std::mem::take(x);
    }
}

/// Column Hermite normal form of the lattice generated by the columns of
/// `gens`: a `d x d` upper-triangular basis with positive diagonal and every
/// off-diagonal entry of row `i` in `[0, h_ii)`. Fails with `Singular` when
/// the columns do not span a full-rank lattice.
pub fn hermite_normal_form(gens: &IntMatrix) -> Result<IntMatrix> {
    let d = gens.rows();
    let ech = column_echelon(gens);
    if ech.rank() != d {
        return Err(Error::Singular);
    }
    let cols: Vec<Vec<BigInt>> = (0..d).map(|j| ech.reduced.column(j)).collect();
    IntMatrix::from_columns(&cols)
}

/// Z-basis of `{x : A x = 0}`, as the columns of the returned matrix (which
/// has zero columns when the kernel is trivial).
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ech = column_echelon(a);
    let n = a.cols();
    let cols: Vec<Vec<BigInt>> = (ech.rank()..n).map(|j| ech.transform.column(j)).collect();
    if cols.is_empty() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::from_columns(&cols).expect("consistent column lengths")
    }
}

/// Smith normal form `M = S * D * T` with `S`, `T` unimodular and the
/// diagonal of `D` nonnegative with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub d: IntMatrix,
    pub t: IntMatrix,
    /// `S^{-1}`, kept because quotient coordinates are read through it.
    pub s_inv: IntMatrix,
    pub t_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form by repeatedly moving the smallest nonzero entry of the
/// trailing block into pivot position.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut s = IntMatrix::identity(rows);
    let mut s_inv = IntMatrix::identity(rows);
    let mut t = IntMatrix::identity(cols);
    let mut t_inv = IntMatrix::identity(cols);

    // D <- E D with E = I + k e_i e_j^T
    let row_add = |d: &mut IntMatrix, s: &mut IntMatrix, s_inv: &mut IntMatrix, i: usize, j: usize, k: &BigInt| {
        d.add_row_multiple(i, j, k);
        s_inv.add_row_multiple(i, j, k);
        s.add_col_multiple(j, i, &-k);
    };
    // D <- D F with F = I + k e_j e_i^T
    let col_add = |d: &mut IntMatrix, t: &mut IntMatrix, t_inv: &mut IntMatrix, i: usize, j: usize, k: &BigInt| {
        d.add_col_multiple(i, j, k);
        t_inv.add_col_multiple(i, j, k);
        t.add_row_multiple(j, i, &-k);
    };

    for p in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in p..rows {
                for j in p..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SnfDecomposition { s, d, t, s_inv, t_inv };
            };
            if bi != p {
                d.swap_rows(p, bi);
                s_inv.swap_rows(p, bi);
                s.swap_cols(p, bi);
            }
            if bj != p {
                d.swap_cols(p, bj);
                t_inv.swap_cols(p, bj);
                t.swap_rows(p, bj);
            }
            let piv = d[(p, p)].clone();
            let mut clean = true;
            for i in p + 1..rows {
                let q = d[(i, p)].div_floor(&piv);
                if !q.is_zero() {
                    row_add(&mut d, &mut s, &mut s_inv, i, p, &-q);
                }
                clean &= d[(i, p)].is_zero();
            }
            for j in p + 1..cols {
                let q = d[(p, j)].div_floor(&piv);
                if !q.is_zero() {
                    col_add(&mut d, &mut t, &mut t_inv, j, p, &-q);
                }
                clean &= d[(p, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => row_add(&mut d, &mut s, &mut s_inv, p, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(p, p)].is_negative() {
            d.negate_row(p);
            s_inv.negate_row(p);
            s.negate_col(p);
        }
    }
    SnfDecomposition { s, d, t, s_inv, t_inv }
}
