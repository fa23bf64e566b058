use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{InducedMap, Lattice, QuotientGroup};
use crate::error::{Error, Result};
use crate::IntMatrix;

/// The auxiliary lattices attached to a pair `(L1, L2)` of nonsingular
/// integer matrices with `p = |det L1|`, `q = |det L2|`:
///
/// * `P1 = Z^d ∩ L2^{-1} L1 Z^d`, `P2 = Z^d ∩ L1^{-1} L2 Z^d`, `P = P1 ∩ P2`
/// * `Q = L1 Z^d ∩ L2 Z^d`
/// * `Li = P ∩ Lj^{-1} Li P` for `{i, j} = {1, 2}`
#[derive(Clone, Debug)]
pub struct PairLattices {
    pub l1: IntMatrix,
    pub l2: IntMatrix,
    pub p: BigInt,
    pub q: BigInt,
    pub p1: Lattice,
    pub p2: Lattice,
    pub p_lattice: Lattice,
    pub q_lattice: Lattice,
    pub big_l1: Lattice,
    pub big_l2: Lattice,
}

impl PairLattices {
    pub fn new(l1: &IntMatrix, l2: &IntMatrix) -> Result<Self> {
        if !l1.is_square() || !l2.is_square() {
            return Err(Error::NotSquare);
        }
        if l1.dim() != l2.dim() {
            return Err(Error::DimensionMismatch {
                expected: l1.dim(),
                found: l2.dim(),
            });
        }
        let p = l1.det().abs();
        let q = l2.det().abs();
        let r1 = l1.to_rat();
        let r2 = l2.to_rat();
        let inv1 = r1.inverse()?;
        let inv2 = r2.inverse()?;
        // L1^{-1} L2 v in Z^d  <=>  v in L2^{-1} L1 Z^d
        let m12 = &inv1 * &r2;
        let m21 = &inv2 * &r1;
        let z = Lattice::standard(l1.dim());
        let p1 = Lattice::preimage(&m12, &z)?;
        let p2 = Lattice::preimage(&m21, &z)?;
        let p_lattice = p1.intersect(&p2)?;
        let q_lattice = Lattice::from_matrix(l1)?.intersect(&Lattice::from_matrix(l2)?)?;
        let big_l1 = p_lattice.intersect(&Lattice::preimage(&m12, &p_lattice)?)?;
        let big_l2 = p_lattice.intersect(&Lattice::preimage(&m21, &p_lattice)?)?;
        Ok(PairLattices {
            l1: l1.clone(),
            l2: l2.clone(),
            p,
            q,
            p1,
            p2,
            p_lattice,
            q_lattice,
            big_l1,
            big_l2,
        })
    }

    /// `φ1, φ2 : Z^d/L1 -> Z^d/(L1 P Z^d)` induced by `L1` and `L2`.
    pub fn induced_maps(&self) -> Result<(InducedMap, InducedMap)> {
        let src = Arc::new(self.big_l1.quotient());
        let dst = Arc::new(self.p_lattice.image(&self.l1)?.quotient());
        let phi1 = InducedMap::from_int(&self.l1, src.clone(), dst.clone())?;
        let phi2 = InducedMap::from_int(&self.l2, src, dst)?;
        Ok((phi1, phi2))
    }

    /// The quotient `Z^d/L1` on which the pair trichotomy is stated.
    pub fn source_group(&self) -> Arc<QuotientGroup> {
        Arc::new(self.big_l1.quotient())
    }

    /// `Mi = Q^{-1} Li P` for the HNF bases `P`, `Q`; integral with
    /// `|det M1| = p`, `|det M2| = q` when the pair is coprime.
    pub fn m_matrices(&self) -> Result<(IntMatrix, IntMatrix)> {
        let qinv = self.q_lattice.basis().to_rat().inverse()?;
        let pb = self.p_lattice.basis();
        let m1 = (&qinv * &(&self.l1 * pb).to_rat()).to_int()?;
        let m2 = (&qinv * &(&self.l2 * pb).to_rat()).to_int()?;
        Ok((m1, m2))
    }

    /// Whether `L1 Z^d + L2 Z^d = Z^d`.
    pub fn sum_is_standard(&self) -> Result<bool> {
        Ok(Lattice::from_matrix(&self.l1)?
            .sum(&Lattice::from_matrix(&self.l2)?)?
            .is_standard())
    }
}
