use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Lattice;
use crate::algebra::smith_normal_form;
use crate::error::{Error, Result};
use crate::{IntMatrix, RatMatrix};

/// Canonical element of a [`QuotientGroup`]: residues `0 <= r_i < d_i`
/// under the invariant factors.
pub type GroupElement = Vec<i64>;

/// The finite abelian group `Z^d / Λ`.
///
/// With the Smith form `B = S D T` of the HNF basis, `v + Λ` is encoded as
/// `S^{-1} v` reduced modulo the diagonal of `D`.
#[derive(Clone)]
pub struct QuotientGroup {
    lattice: Lattice,
    s: IntMatrix,
    s_inv: IntMatrix,
    factors: Vec<i64>,
}

impl PartialEq for QuotientGroup {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

impl Eq for QuotientGroup {}

impl fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}/[{}] factors {:?}", self.dim(), self.lattice, self.factors)
    }
}

impl QuotientGroup {
    pub fn new(lattice: Lattice) -> Self {
        Self::try_new(lattice).expect("quotient group order exceeds i64 residues")
    }

    pub fn try_new(lattice: Lattice) -> Result<Self> {
        let snf = smith_normal_form(lattice.basis());
        let factors = snf
            .invariant_factors()
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientGroup {
            lattice,
            s: snf.s,
            s_inv: snf.s_inv,
            factors,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&f| f as u64).product()
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.dim()]
    }

    pub fn reduce(&self, v: &[BigInt]) -> GroupElement {
        self.s_inv
            .mul_vec(v)
            .iter()
            .zip(&self.factors)
            .map(|(x, &f)| x.mod_floor(&BigInt::from(f)).to_i64().expect("residue below factor"))
            .collect()
    }

    pub fn reduce_i64(&self, v: &[i64]) -> GroupElement {
        self.reduce(&super::ivec(v))
    }

    /// An integer vector in the coset `r`.
    pub fn lift(&self, r: &[i64]) -> Vec<BigInt> {
        self.s.mul_vec(&super::ivec(r))
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), &f)| (x + y).rem_euclid(f))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> GroupElement {
        a.iter().zip(&self.factors).map(|(x, &f)| (-x).rem_euclid(f)).collect()
    }

    /// All elements in lexicographic order, zero first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let d = self.dim();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut r = vec![0i64; d];
        loop {
            out.push(r.clone());
            let mut pos = d;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                r[pos] += 1;
                if r[pos] < self.factors[pos] {
                    break;
                }
                r[pos] = 0;
            }
        }
    }

    /// Subgroup generated by `gens`, enumerated by closure.
    pub fn span(&self, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
        let mut seen = BTreeSet::new();
        let zero = self.zero();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether `gens` generate the whole group, decided by a lattice sum.
    pub fn generated_by<'a>(&self, gens: impl IntoIterator<Item = &'a GroupElement>) -> bool {
        let mut cols = self.lattice.basis().columns();
        cols.extend(gens.into_iter().map(|g| self.lift(g)));
        let m = IntMatrix::from_columns(&cols).expect("columns share dimension");
        Lattice::from_generators(&m).map(|l| l.is_standard()).unwrap_or(false)
    }

    /// The subgroup `sub / Λ` for a lattice `Λ ⊆ sub`.
    pub fn sublattice_image(&self, sub: &Lattice) -> Result<BTreeSet<GroupElement>> {
        if let Some(w) = self.lattice.containment_witness(sub) {
            return Err(Error::NotContained {
                witness: w.iter().map(|x| x.to_string()).collect(),
            });
        }
        let gens: Vec<GroupElement> = sub.basis().columns().iter().map(|c| self.reduce(c)).collect();
        Ok(self.span(&gens))
    }

    pub fn format_element(r: &[i64]) -> String {
        let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// A subset of a quotient group, held as canonical elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSubset {
    group: Arc<QuotientGroup>,
    elements: BTreeSet<GroupElement>,
}

impl GroupSubset {
    /// Elements are reduced into canonical form, so any residue tuple works.
    pub fn new(group: Arc<QuotientGroup>, elements: impl IntoIterator<Item = GroupElement>) -> Self {
        let elements = elements
            .into_iter()
            .map(|e| {
                let lifted = group.lift(&e);
                group.reduce(&lifted)
            })
            .collect();
        GroupSubset { group, elements }
    }

    /// Image of integer vectors in the quotient.
    pub fn from_vectors(group: Arc<QuotientGroup>, vectors: &[Vec<i64>]) -> Self {
        let elements = vectors.iter().map(|v| group.reduce_i64(v)).collect();
        GroupSubset { group, elements }
    }

    pub fn full(group: Arc<QuotientGroup>) -> Self {
        let elements = group.elements().into_iter().collect();
        GroupSubset { group, elements }
    }

    pub fn group(&self) -> &Arc<QuotientGroup> {
        &self.group
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        self.elements.contains(e)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&self.group.zero())
    }

    pub fn generates(&self) -> bool {
        self.group.generated_by(&self.elements)
    }

    pub fn sumset(&self, other: &GroupSubset) -> Result<GroupSubset> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut elements = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                elements.insert(self.group.add(a, b));
            }
        }
        Ok(GroupSubset {
            group: self.group.clone(),
            elements,
        })
    }

    pub fn is_superset_of(&self, set: &BTreeSet<GroupElement>) -> bool {
        set.iter().all(|e| self.elements.contains(e))
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| QuotientGroup::format_element(e)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Homomorphism `Z^d/Λ_src -> Z^d/Λ_dst` induced by an integer matrix `M`
/// with `M Λ_src ⊆ Λ_dst`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    matrix: IntMatrix,
    src: Arc<QuotientGroup>,
    dst: Arc<QuotientGroup>,
}

impl InducedMap {
    /// Fails with [`Error::IllDefinedMap`] carrying a source-lattice vector
    /// whose image leaves the target lattice, or [`Error::NonIntegral`] if
    /// `M` does not map `Z^d` into itself.
    pub fn new(m: &RatMatrix, src: Arc<QuotientGroup>, dst: Arc<QuotientGroup>) -> Result<Self> {
        if src.dim() != dst.dim() || m.rows() != src.dim() || !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: src.dim(),
                found: m.rows(),
            });
        }
        let matrix = m.to_int()?;
        for b in src.lattice().basis().columns() {
            if !dst.lattice().contains(&matrix.mul_vec(&b)) {
                return Err(Error::IllDefinedMap {
                    witness: b.iter().map(|x| x.to_string()).collect(),
                });
            }
        }
        Ok(InducedMap { matrix, src, dst })
    }

    pub fn from_int(m: &IntMatrix, src: Arc<QuotientGroup>, dst: Arc<QuotientGroup>) -> Result<Self> {
        Self::new(&m.to_rat(), src, dst)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &Arc<QuotientGroup> {
        &self.src
    }

    pub fn target(&self) -> &Arc<QuotientGroup> {
        &self.dst
    }

    pub fn apply(&self, r: &[i64]) -> GroupElement {
        self.dst.reduce(&self.matrix.mul_vec(&self.src.lift(r)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &InducedMap) -> Result<InducedMap> {
        if first.dst != self.src {
            return Err(Error::GroupMismatch);
        }
        Ok(InducedMap {
            matrix: &self.matrix * &first.matrix,
            src: first.src.clone(),
            dst: self.dst.clone(),
        })
    }

    /// Pointwise sum `x -> self(x) + other(x)`.
    pub fn sum(&self, other: &InducedMap) -> Result<InducedMap> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::GroupMismatch);
        }
        Ok(InducedMap {
            matrix: &self.matrix + &other.matrix,
            src: self.src.clone(),
            dst: self.dst.clone(),
        })
    }

    pub fn image(&self, x: &GroupSubset) -> Result<GroupSubset> {
        if x.group() != &self.src {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupSubset {
            group: self.dst.clone(),
            elements: x.elements().iter().map(|e| self.apply(e)).collect(),
        })
    }

    /// Bijectivity, by comparing the image of the whole source with the
    /// target order.
    pub fn is_isomorphism(&self) -> bool {
        if self.src.order() != self.dst.order() {
            return false;
        }
        let image: BTreeSet<GroupElement> = self.src.elements().iter().map(|e| self.apply(e)).collect();
        image.len() as u64 == self.dst.order()
    }

    pub fn is_zero(&self) -> bool {
        self.src.elements().iter().all(|e| self.apply(e).iter().all(|x| *x == 0))
    }
}
