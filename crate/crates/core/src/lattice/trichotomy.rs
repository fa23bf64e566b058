use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{GroupElement, GroupSubset, InducedMap, Lattice, QuotientGroup};
use crate::error::{Error, Result};
use crate::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TrichotomyCase {
    /// The subset (together with the distinguished subgroup, for the single
    /// matrix version) does not generate the group.
    NotGenerate,
    StrictGrowth,
    /// The subset contains `L Z^d / L^2 Z^d`.
    ContainsH,
    /// The subset contains `P Z^d / L_1`.
    ContainsP,
}

/// The group `Z^d / L^2 Z^d`.
pub fn trichotomy_group(l: &IntMatrix) -> Result<Arc<QuotientGroup>> {
    Ok(Arc::new(Lattice::from_matrix(&l.pow(2))?.quotient()))
}

fn nonempty(cases: BTreeSet<TrichotomyCase>, what: &str) -> Result<BTreeSet<TrichotomyCase>> {
    if cases.is_empty() {
        return Err(Error::Internal(format!("no case of the {what} trichotomy holds")));
    }
    Ok(cases)
}

/// All cases that hold for `X ⊆ G = Z^d/L^2 Z^d` with `H = L Z^d / L^2 Z^d`:
/// `X + H` fails to generate `G`, `X + L X ⊋ X`, or `H ⊆ X`.
pub fn trichotomy_l(x: &GroupSubset, l: &IntMatrix) -> Result<BTreeSet<TrichotomyCase>> {
    let g = trichotomy_group(l)?;
    if x.group().as_ref() != g.as_ref() {
        return Err(Error::GroupMismatch);
    }
    if !x.contains_zero() {
        return Err(Error::MissingZero);
    }
    let h_gens: Vec<GroupElement> = l.columns().iter().map(|c| g.reduce(c)).collect();
    let mut cases = BTreeSet::new();

    if !g.generated_by(x.elements().iter().chain(&h_gens)) {
        cases.insert(TrichotomyCase::NotGenerate);
    }

    let lx: Vec<GroupElement> = x
        .elements()
        .iter()
        .map(|y| g.reduce(&l.mul_vec(&g.lift(y))))
        .collect();
    let grows = x
        .elements()
        .iter()
        .any(|a| lx.iter().any(|b| !x.contains(&g.add(a, b))));
    if grows {
        cases.insert(TrichotomyCase::StrictGrowth);
    }

    if x.is_superset_of(&g.span(&h_gens)) {
        cases.insert(TrichotomyCase::ContainsH);
    }
    nonempty(cases, "single-matrix")
}

/// All cases that hold for `X ⊆ G = Z^d/L_1` under the maps of a pair:
/// `X` fails to generate `G`, `|φ1(X) + φ2(X)| > |X|`, or `P Z^d / L_1 ⊆ X`.
pub fn trichotomy_pair(
    x: &GroupSubset,
    phi1: &InducedMap,
    phi2: &InducedMap,
    p: &Lattice,
) -> Result<BTreeSet<TrichotomyCase>> {
    let g = x.group();
    if phi1.source() != g || phi2.source() != g || phi1.target() != phi2.target() {
        return Err(Error::GroupMismatch);
    }
    if !x.contains_zero() {
        return Err(Error::MissingZero);
    }
    let mut cases = BTreeSet::new();
    if !x.generates() {
        cases.insert(TrichotomyCase::NotGenerate);
    }
    let sum = phi1.image(x)?.sumset(&phi2.image(x)?)?;
    if sum.len() > x.len() {
        cases.insert(TrichotomyCase::StrictGrowth);
    }
    if x.is_superset_of(&g.sublattice_image(p)?) {
        cases.insert(TrichotomyCase::ContainsP);
    }
    nonempty(cases, "pair")
}

#[cfg(test)]
mod tests {
    use super::*;
    use TrichotomyCase::*;

    fn l() -> IntMatrix {
        IntMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]).unwrap()
    }

    #[test]
    fn single_matrix_examples() {
        let g = trichotomy_group(&l()).unwrap();
        assert_eq!(g.order(), 4);
        let full = GroupSubset::full(g.clone());
        assert!(trichotomy_l(&full, &l()).unwrap().contains(&ContainsH));
        let zero = GroupSubset::new(g.clone(), vec![vec![0, 0]]);
        assert!(trichotomy_l(&zero, &l()).unwrap().contains(&NotGenerate));
        let x = GroupSubset::new(g.clone(), vec![vec![0, 0], vec![1, 0]]);
        assert!(trichotomy_l(&x, &l()).unwrap().contains(&StrictGrowth));
        let h = GroupSubset::new(g.clone(), vec![vec![0, 0], vec![0, 1]]);
        assert!(trichotomy_l(&h, &l()).unwrap().contains(&ContainsH));
        let no_zero = GroupSubset::new(g, vec![vec![1, 0]]);
        assert_eq!(trichotomy_l(&no_zero, &l()), Err(Error::MissingZero));
    }

    #[test]
    fn mismatched_group_rejected() {
        let g = Arc::new(Lattice::scaled(2, 3).unwrap().quotient());
        let x = GroupSubset::new(g, vec![vec![0, 0]]);
        assert_eq!(trichotomy_l(&x, &l()), Err(Error::GroupMismatch));
    }
}
