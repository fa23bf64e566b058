use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{lcm_all, rat_to_int, Field, FromBigInt, Scalar};

/// Dense row-major matrix.
///
/// Most of the crate works with square matrices, but normal forms and kernel
/// computations need rectangular generating matrices, so the shape is free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Square matrix from rows; rejects non-square or empty input.
    pub fn square(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if m.rows == 0 || m.rows != m.cols {
            return Err(Error::NotSquare);
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Fraction-free (Bareiss) determinant. Every division is exact in an
    /// integral domain, so integer inputs never leave the integers.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row[i] += k * row[j]`
    pub fn add_row_multiple(&mut self, i: usize, j: usize, k: &T) {
        for c in 0..self.cols {
            let v = self[(j, c)].clone() * k.clone();
            self[(i, c)] = self[(i, c)].clone() + v;
        }
    }

    /// `col[i] += k * col[j]`
    pub fn add_col_multiple(&mut self, i: usize, j: usize, k: &T) {
        for r in 0..self.rows {
            let v = self[(r, j)].clone() * k.clone();
            self[(r, i)] = self[(r, i)].clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self[(i, c)] = -self[(i, c)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(&cols)
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss–Jordan inverse; `Singular` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let piv = a[(k, k)].clone();
            for c in 0..n {
                a[(k, c)] = a[(k, c)].clone() / piv.clone();
                inv[(k, c)] = inv[(k, c)].clone() / piv.clone();
            }
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = -a[(i, k)].clone();
                    a.add_row_multiple(i, k, &f);
                    inv.add_row_multiple(i, k, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in 0..a.rows {
                if i != rank && !a[(i, c)].is_zero() {
                    let f = -(a[(i, c)].clone() / a[(rank, c)].clone());
                    a.add_row_multiple(i, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T: FromBigInt> Matrix<T> {
    pub fn from_int(m: &Matrix<BigInt>) -> Self {
        m.map(T::from_bigint)
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> Matrix<BigRational> {
        Matrix::from_int(self)
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.mul_vec(&v)
    }
}

impl Matrix<BigRational> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Ok(Matrix::<BigInt>::from_i64_rows(rows)?.to_rat())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Result<Matrix<BigInt>> {
        let data = self.data.iter().map(rat_to_int).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Least positive `c` with `c * self` integral, and that integer matrix.
    pub fn clear_denominators(&self) -> (BigInt, Matrix<BigInt>) {
        let c = lcm_all(self.data.iter().map(|x| x.denom()));
        let cr = BigRational::from_integer(c.clone());
        let m = self.map(|x| x.clone() * cr.clone());
        (c, m.to_int().expect("cleared matrix is integral"))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Text form: rows separated by `;`, entries by `,` (e.g. `2,0;0,1`).
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses the `;`/`,` matrix literal. The result must be square.
pub fn parse_matrix<T>(s: &str) -> Result<Matrix<T>>
where
    T: Scalar + FromStr,
{
    let rows = s
        .trim()
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    let e = e.trim();
                    e.parse::<T>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {e:?}")))
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::square(rows)
}

impl<T: Scalar + FromStr> FromStr for Matrix<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{IntMatrix, RatMatrix};

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(3).det(), rat(1, 1));
        let l2 = RatMatrix::from_i64_rows(&[&[0, -1], &[2, 0]]).unwrap();
        assert_eq!(l2.det(), rat(2, 1));
        let l1 = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]).unwrap();
        assert_eq!(l1.det(), rat(2, 1));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).unwrap();
        // expansion along first row: 0 - 1*(8-12) + 2*(-3-0) = 4 - 6
        assert_eq!(m.det(), BigInt::from(-2));
    }

    #[test]
    fn det_generic_over_scalars() {
        let m = Matrix::<i64>::from_rows(vec![vec![3, 1], vec![4, 2]]).unwrap();
        assert_eq!(m.det(), 2);
        let f = Matrix::<f64>::from_rows(vec![vec![0.5, 1.0], vec![2.0, 3.0]]).unwrap();
        assert!((f.det() - (-0.5)).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        let s = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn parse_and_display() {
        let m: IntMatrix = parse_matrix("2,0;0,1").unwrap();
        assert_eq!(m.to_string(), "2,0;0,1");
        let r: RatMatrix = parse_matrix("0,2;1/2,-1/2").unwrap();
        assert_eq!(r[(1, 0)], rat(1, 2));
        assert!(parse_matrix::<BigInt>("1,2;3").is_err());
        assert!(parse_matrix::<BigInt>("1,2").is_err());
        assert!(parse_matrix::<BigInt>("1,x;0,1").is_err());
    }

    #[test]
    fn clear_denominators_is_least() {
        let r: RatMatrix = parse_matrix("1/2,1/3;0,1").unwrap();
        let (c, m) = r.clear_denominators();
        assert_eq!(c, BigInt::from(6));
        assert_eq!(m.to_string(), "3,2;0,6");
    }
}
