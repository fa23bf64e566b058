//! Full-rank sublattices of `Z^d` in canonical Hermite normal form, their
//! finite quotients and the homomorphisms integer matrices induce on them.

mod pair;
mod quotient;
mod trichotomy;

pub use pair::PairLattices;
pub use quotient::{GroupElement, GroupSubset, InducedMap, QuotientGroup};
pub use trichotomy::{trichotomy_group, trichotomy_l, trichotomy_pair, TrichotomyCase};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{hermite_normal_form, integer_kernel};
use crate::error::{Error, Result};
use crate::{IntMatrix, RatMatrix};

/// Full-rank lattice `B Z^d` stored by its column HNF basis `B`, so two
/// lattices are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice spanned by the columns of `gens` (any number of columns).
    pub fn from_generators(gens: &IntMatrix) -> Result<Self> {
        Ok(Lattice {
            basis: hermite_normal_form(gens)?,
        })
    }

    /// `M Z^d` for a nonsingular integer matrix; its index is `|det M|`.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Self::from_generators(m)
    }

    /// `M Z^d` for a rational matrix mapping `Z^d` into itself, i.e. one with
    /// integral entries.
    pub fn from_rat_matrix(m: &RatMatrix) -> Result<Self> {
        Self::from_matrix(&m.to_int()?)
    }

    /// `Z^d`.
    pub fn standard(d: usize) -> Self {
        Lattice {
            basis: IntMatrix::identity(d),
        }
    }

    /// `k Z^d`.
    pub fn scaled(d: usize, k: i64) -> Result<Self> {
        Self::from_matrix(&IntMatrix::identity(d).scale(&BigInt::from(k)))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `[Z^d : self]`, the product of the HNF diagonal.
    pub fn index(&self) -> BigInt {
        (0..self.dim()).map(|i| self.basis[(i, i)].clone()).product()
    }

    pub fn is_standard(&self) -> bool {
        self.index().is_one()
    }

    /// Canonical representative of `v + self`: the unique vector in the coset
    /// with `0 <= r_i < h_ii`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim(), "vector dimension mismatch");
        let mut r = v.to_vec();
        for i in (0..self.dim()).rev() {
            let q = r[i].div_floor(&self.basis[(i, i)]);
            if !q.is_zero() {
                for (k, x) in r.iter_mut().enumerate().take(i + 1) {
                    *x -= &q * &self.basis[(k, i)];
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let d = self.dim();
        let mut r = v.to_vec();
        let mut c = vec![BigInt::zero(); d];
        for i in (0..d).rev() {
            let (q, rem) = r[i].div_rem(&self.basis[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            for (k, x) in r.iter_mut().enumerate().take(i + 1) {
                *x -= &q * &self.basis[(k, i)];
            }
            c[i] = q;
        }
        Some(c)
    }

    /// First basis vector of `self` outside `other`, if any.
    pub fn containment_witness(&self, other: &Lattice) -> Option<Vec<BigInt>> {
        (0..self.dim())
            .map(|j| self.basis.column(j))
            .find(|b| !other.contains(b))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim() == other.dim() && self.containment_witness(other).is_none()
    }

    fn check_dim(&self, other: &Lattice) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `self ∩ other`, from the kernel of the stacked basis `[B1 | -B2]`.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        let d = self.dim();
        let stacked = self.basis.hstack(&(-&other.basis))?;
        let ker = integer_kernel(&stacked);
        let x_part = ker.submatrix(&(0..d).collect::<Vec<_>>(), &(0..ker.cols()).collect::<Vec<_>>());
        Lattice::from_generators(&(&self.basis * &x_part))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        Lattice::from_generators(&self.basis.hstack(&other.basis)?)
    }

    /// `{v in Z^d : M v in target}` for nonsingular rational `M`.
    pub fn preimage(m: &RatMatrix, target: &Lattice) -> Result<Lattice> {
        if !m.is_square() {
            return Err(Error::NotSquare);
        }
        if m.dim() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: m.dim(),
            });
        }
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        let d = m.dim();
        // M = N / c, so M v in T  <=>  N v in c T
        let (c, n) = m.clear_denominators();
        let scaled = target.basis.scale(&c);
        let stacked = n.hstack(&(-&scaled))?;
        let ker = integer_kernel(&stacked);
        let v_part = ker.submatrix(&(0..d).collect::<Vec<_>>(), &(0..ker.cols()).collect::<Vec<_>>());
        Lattice::from_generators(&v_part)
    }

    /// `Z^d ∩ M Z^d` for nonsingular rational `M`.
    pub fn integral_image(m: &RatMatrix) -> Result<Lattice> {
        let pre = Lattice::preimage(m, &Lattice::standard(m.dim()))?;
        let img = (m * &pre.basis.to_rat()).to_int()?;
        Lattice::from_generators(&img)
    }

    /// `M self` for an integer matrix `M` (nonsingular).
    pub fn image(&self, m: &IntMatrix) -> Result<Lattice> {
        Lattice::from_matrix(&(m * &self.basis))
    }

    /// One representative per coset of `self` in `sup`, each reduced modulo
    /// `self`, sorted lexicographically (so the zero vector comes first).
    pub fn coset_reps(&self, sup: &Lattice) -> Result<Vec<Vec<BigInt>>> {
        self.check_dim(sup)?;
        if let Some(w) = self.containment_witness(sup) {
            return Err(Error::NotContained {
                witness: w.iter().map(|x| x.to_string()).collect(),
            });
        }
        let d = self.dim();
        // coordinates of our basis in the basis of sup
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| sup.coordinates(&self.basis.column(j)).expect("containment checked"))
            .collect();
        let rel = Lattice::from_generators(&IntMatrix::from_columns(&cols)?)?;
        let bounds: Vec<BigInt> = (0..d).map(|i| rel.basis[(i, i)].clone()).collect();
        let mut reps = Vec::new();
        let mut r = vec![BigInt::zero(); d];
        loop {
            let v = sup.basis.mul_vec(&r);
            reps.push(self.reduce(&v));
            let mut pos = d;
            loop {
                if pos == 0 {
                    reps.sort();
                    return Ok(reps);
                }
                pos -= 1;
                r[pos] += 1;
                if r[pos] < bounds[pos] {
                    break;
                }
                r[pos] = BigInt::zero();
            }
        }
    }

    pub fn quotient(&self) -> QuotientGroup {
        QuotientGroup::new(self.clone())
    }

    pub fn is_negative_free(&self) -> bool {
        self.basis.entries().all(|x| !x.is_negative())
    }
}

/// HNF basis in the `;`/`,` matrix text format.
impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice[{}]", self.basis)
    }
}

pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::from_matrix(&m(rows)).unwrap()
    }

    #[test]
    fn lattice_from_examples() {
        assert_eq!(Lattice::from_matrix(&IntMatrix::identity(3)).unwrap(), Lattice::standard(3));
        assert_eq!(lat(&[&[2, 0], &[0, 1]]).index(), BigInt::from(2));
        let l = lat(&[&[0, 2], &[1, 0]]);
        assert_eq!(l.index(), BigInt::from(2));
        assert_eq!(l.basis(), &m(&[&[2, 0], &[0, 1]]));
        assert_eq!(Lattice::from_matrix(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn index_examples() {
        assert_eq!(lat(&[&[2, 0], &[0, 3]]).index(), BigInt::from(6));
        assert_eq!(lat(&[&[0, -1], &[2, 0]]).index(), BigInt::from(2));
    }

    #[test]
    fn intersect_examples() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(a.intersect(&Lattice::standard(2)).unwrap(), a);
        let b = lat(&[&[0, -1], &[2, 0]]);
        assert_eq!(a.intersect(&b).unwrap().index(), BigInt::from(4));
        let c = lat(&[&[1, 0], &[0, 2]]);
        assert_eq!(a.intersect(&c).unwrap(), lat(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn sum_examples() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(a.sum(&Lattice::standard(2)).unwrap(), Lattice::standard(2));
        let b = lat(&[&[0, -1], &[2, 0]]);
        assert_eq!(a.sum(&b).unwrap(), Lattice::standard(2));
        let c = lat(&[&[1, 0], &[0, 2]]);
        assert_eq!(a.sum(&c).unwrap(), Lattice::standard(2));
    }

    #[test]
    fn preimage_examples() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(Lattice::preimage(&RatMatrix::identity(2), &a).unwrap(), a);
        // L1 = I, L2 = [[0,2],[1,0]]
        let l2 = m(&[&[0, 2], &[1, 0]]).to_rat();
        let z2 = Lattice::standard(2);
        // P2 = Z^2 ∩ L1^{-1} L2 Z^2 = preimage of Z^2 under L2^{-1} L1
        let p2 = Lattice::preimage(&l2.inverse().unwrap(), &z2).unwrap();
        assert_eq!(p2, Lattice::from_matrix(&m(&[&[0, 2], &[1, 0]])).unwrap());
        assert_eq!(p2.index(), BigInt::from(2));
        let p1 = Lattice::preimage(&l2, &z2).unwrap();
        assert_eq!(p1, z2);
        assert_eq!(
            Lattice::preimage(&m(&[&[1, 1], &[1, 1]]).to_rat(), &z2),
            Err(Error::Singular)
        );
    }

    #[test]
    fn coset_reps_examples() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        assert_eq!(a.coset_reps(&a).unwrap(), vec![ivec(&[0, 0])]);
        let two = Lattice::scaled(2, 2).unwrap();
        let reps = two.coset_reps(&Lattice::standard(2)).unwrap();
        assert_eq!(reps, vec![ivec(&[0, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);
        assert_eq!(a.coset_reps(&Lattice::standard(2)).unwrap(), vec![ivec(&[0, 0]), ivec(&[1, 0])]);
        match Lattice::standard(2).coset_reps(&two) {
            Err(Error::NotContained { witness }) => assert_eq!(witness.len(), 2),
            other => panic!("expected containment failure, got {other:?}"),
        }
    }

    #[test]
    fn integral_image_of_rational_map() {
        // Z^2 ∩ diag(1/2, 1) Z^2 = Z^2
        let half: RatMatrix = "1/2,0;0,1".parse().unwrap();
        assert_eq!(Lattice::integral_image(&half).unwrap(), Lattice::standard(2));
        let two: RatMatrix = "2,0;0,1".parse().unwrap();
        assert_eq!(Lattice::integral_image(&two).unwrap().index(), BigInt::from(2));
    }

    #[test]
    fn reduce_is_canonical() {
        let l = lat(&[&[2, 1], &[0, 3]]);
        let v = ivec(&[7, -5]);
        let r = l.reduce(&v);
        assert_eq!(l.reduce(&r), r);
        let diff: Vec<BigInt> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        assert!(l.contains(&diff));
    }
}
