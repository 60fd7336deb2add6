//! Inner automorphisms exp(ad_x), the groups they generate, conjugacy of
//! subspaces under those groups, and Engel-condition checks.

use std::collections::HashMap;

use crate::engel::ad_nilpotency_index;
use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::ring::LieRing;
use crate::subspace::Subspace;

/// exp(ad_x) as an invertible matrix, with the witness element and the
/// nilpotency index of ad_x.
#[derive(Debug, Clone)]
pub struct InnerAutomorphism {
    pub matrix: FpMatrix,
    pub witness: Vec<u64>,
    pub nilpotency_index: usize,
}

/// Truncated exponential of a nilpotent adjoint. The nilpotency index m must
/// satisfy m <= p so that every factorial below m is invertible; m = p is
/// fine since (p-1)! is a unit. The result is verified to respect the
/// bracket on all basis pairs.
pub fn exp_ad(g: &LieRing, x: &[u64]) -> Result<InnerAutomorphism> {
    let p = g.p();
    let m = ad_nilpotency_index(g, x).ok_or(Error::NotNilpotent)?;
    if m as u64 > p {
        return Err(Error::IndexExceedsCharacteristic { index: m, p });
    }
    let ad = g.ad(x);
    let mut matrix = FpMatrix::identity(g.dim(), p);
    let mut power = FpMatrix::identity(g.dim(), p);
    let mut factorial = 1u64;
    for k in 1..m {
        power = power.mul(&ad);
        factorial = fp::mul_m(factorial, k as u64 % p, p);
        matrix = matrix.add(&power.scale(fp::inv_m(factorial, p)));
    }
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let lhs = matrix.mul_vec(g.basis_bracket(i, j));
            let rhs = g.bracket(
                &matrix.mul_vec(&g.basis_vec(i)),
                &matrix.mul_vec(&g.basis_vec(j)),
            );
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!(
                    "exp(ad_x) for x = {x:?} in {} breaks the bracket at pair ({i}, {j})",
                    g.name()
                )));
            }
        }
    }
    Ok(InnerAutomorphism {
        matrix,
        witness: x.to_vec(),
        nilpotency_index: m,
    })
}

/// Image of a subspace under an automorphism matrix.
pub fn apply_to_subspace(m: &FpMatrix, s: &Subspace) -> Subspace {
    let rows: Vec<Vec<u64>> = s.basis_rows().iter().map(|r| m.mul_vec(r)).collect();
    Subspace::from_rows(s.ambient_dim(), s.p(), &rows)
}

/// The group generated by all exp(ad_x) for x in a subspace, as an explicit
/// closed set of matrices with generator words for replay.
#[derive(Debug, Clone)]
pub struct InnerGroup {
    pub generators: Vec<InnerAutomorphism>,
    elements: Vec<FpMatrix>,
    words: Vec<Vec<usize>>,
    pub cap: u64,
}

impl InnerGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    /// The generator indices whose product (left to right) is element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }
}

/// Breadth-first closure of {exp(ad_x) : x ∈ U, ad_x nilpotent of index ≤ p}
/// under multiplication. Elements of U whose exponential does not exist are
/// skipped; inverses come for free since -x ranges over U as well.
pub fn inner_group(g: &LieRing, u: &Subspace, cap: u64) -> Result<InnerGroup> {
    let identity = FpMatrix::identity(g.dim(), g.p());
    let mut generators: Vec<InnerAutomorphism> = Vec::new();
    let mut seen_gen: HashMap<FpMatrix, ()> = HashMap::new();
    for x in u.vectors(cap)? {
        match exp_ad(g, &x) {
            Ok(a) => {
                if a.matrix != identity && seen_gen.insert(a.matrix.clone(), ()).is_none() {
                    generators.push(a);
                }
            }
            Err(Error::NotNilpotent) | Err(Error::IndexExceedsCharacteristic { .. }) => continue,
            Err(e) => return Err(e),
        }
    }

    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<FpMatrix, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        let word = words[frontier].clone();
        for (gi, gen) in generators.iter().enumerate() {
            let next = gen.matrix.mul(&current);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() as u64 >= cap {
                return Err(Error::guard(
                    "inner automorphism group closure",
                    elements.len() as u128 + 1,
                    cap,
                ));
            }
            index.insert(next.clone(), elements.len());
            let mut w = vec![gi];
            w.extend(&word);
            elements.push(next);
            words.push(w);
        }
        frontier += 1;
    }
    Ok(InnerGroup {
        generators,
        elements,
        words,
        cap,
    })
}

/// A group element carrying one subspace onto another, with the generator
/// chain that composes to it.
#[derive(Debug, Clone)]
pub struct ConjugacyWitness {
    pub matrix: FpMatrix,
    pub chain: Vec<InnerAutomorphism>,
}

/// Scan the closed group for an element mapping u1 onto u2.
pub fn are_conjugate(
    _g: &LieRing,
    u1: &Subspace,
    u2: &Subspace,
    group: &InnerGroup,
) -> Option<ConjugacyWitness> {
    for (i, m) in group.elements().iter().enumerate() {
        if &apply_to_subspace(m, u1) == u2 {
            let chain = group
                .word(i)
                .iter()
                .map(|&gi| group.generators[gi].clone())
                .collect();
            return Some(ConjugacyWitness {
                matrix: m.clone(),
                chain,
            });
        }
    }
    None
}

/// Whether ad_x^k kills the whole ring for every x in the subspace.
pub fn is_k_engel(g: &LieRing, u: &Subspace, k: usize, guard: u64) -> Result<bool> {
    for x in u.vectors(guard)? {
        if !g.ad(&x).pow(k).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Family, FamilySpec};

    fn ring(family: Family, n: usize, p: u64) -> LieRing {
        corpus::generate(&FamilySpec {
            family,
            n,
            p,
            seed: 0,
        })
        .unwrap()
    }

    #[test]
    fn exponential_of_zero_is_the_identity() {
        let g = ring(Family::Affine2, 2, 5);
        let a = exp_ad(&g, &g.zero_vec()).unwrap();
        assert_eq!(a.matrix, FpMatrix::identity(2, 5));
        assert_eq!(a.nilpotency_index, 1);
    }

    #[test]
    fn exponential_in_heisenberg_shears_by_the_center() {
        let h = ring(Family::Heisenberg, 3, 3);
        let a = exp_ad(&h, &h.basis_vec(0)).unwrap();
        assert_eq!(a.nilpotency_index, 2);
        assert_eq!(a.matrix.mul_vec(&h.basis_vec(0)), h.basis_vec(0));
        assert_eq!(a.matrix.mul_vec(&h.basis_vec(2)), h.basis_vec(2));
        let img = a.matrix.mul_vec(&h.basis_vec(1));
        assert_eq!(img, vec![0, 1, 1]); // e1 + e2
    }

    #[test]
    fn exponential_of_non_nilpotent_is_rejected() {
        let g = ring(Family::Affine2, 2, 5);
        assert!(matches!(
            exp_ad(&g, &g.basis_vec(0)),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn index_above_characteristic_is_rejected() {
        // In 4×4 strictly upper triangular matrices the element
        // x = e01 + e12 + e23 has ad-nilpotency index 3: ad(x) drives
        // e01 → -e02 → -e03 → 0, so only the third power vanishes.
        let g = ring(Family::StrictlyUpper, 4, 2);
        assert_eq!(g.dim(), 6);
        // Basis order: e01,e02,e03,e12,e13,e23; x = e01 + e12 + e23.
        let x = g.element(&[1, 0, 0, 1, 0, 1]).unwrap();
        assert_eq!(crate::engel::ad_nilpotency_index(&g, &x), Some(3));
        assert!(matches!(
            exp_ad(&g, &x),
            Err(Error::IndexExceedsCharacteristic { index: 3, p: 2 })
        ));
        // The same element over F_3 exponentiates fine.
        let g3 = ring(Family::StrictlyUpper, 4, 3);
        let x3 = g3.element(&[1, 0, 0, 1, 0, 1]).unwrap();
        exp_ad(&g3, &x3).unwrap();
    }

    #[test]
    fn inverse_law() {
        let h = ring(Family::Heisenberg, 3, 5);
        let x = h.element(&[1, 2, 0]).unwrap();
        let a = exp_ad(&h, &x).unwrap();
        let negx = h.element(&[-1, -2, 0]).unwrap();
        let b = exp_ad(&h, &negx).unwrap();
        assert_eq!(a.matrix.mul(&b.matrix), FpMatrix::identity(3, 5));
    }

    #[test]
    fn trivial_groups() {
        let g = ring(Family::Abelian, 3, 3);
        let grp = inner_group(&g, &g.full_space(), 1000).unwrap();
        assert_eq!(grp.len(), 1);

        let h = ring(Family::Heisenberg, 3, 3);
        let z = h.center();
        let grp = inner_group(&h, z.space(), 1000).unwrap();
        assert_eq!(grp.len(), 1);
    }

    #[test]
    fn affine_inner_group_is_the_translation_line() {
        let g = ring(Family::Affine2, 2, 3);
        let gp = g.derived_subring();
        let grp = inner_group(&g, gp.space(), 1000).unwrap();
        assert_eq!(grp.len(), 3);
    }

    #[test]
    fn conjugacy_in_the_affine_ring() {
        let g = ring(Family::Affine2, 2, 3);
        let grp = inner_group(&g, g.derived_subring().space(), 1000).unwrap();
        let line0 = Subspace::from_rows(2, 3, &[g.basis_vec(0)]);
        assert!(are_conjugate(&g, &line0, &line0, &grp)
            .is_some_and(|w| w.matrix == FpMatrix::identity(2, 3)));

        let shifted = Subspace::from_rows(2, 3, &[vec![1, 1]]);
        let w = are_conjugate(&g, &line0, &shifted, &grp).expect("conjugate lines");
        assert_eq!(apply_to_subspace(&w.matrix, &line0), shifted);
        assert!(!w.chain.is_empty());

        let ideal_line = Subspace::from_rows(2, 3, &[g.basis_vec(1)]);
        assert!(are_conjugate(&g, &line0, &ideal_line, &grp).is_none());
    }

    #[test]
    fn group_closure_and_witness_chains() {
        for (p, fam) in [(3u64, Family::Affine2), (5, Family::Borel)] {
            let g = ring(fam, 2, p);
            let grp = inner_group(&g, g.derived_subring().space(), 1000).unwrap();
            let id = FpMatrix::identity(g.dim(), g.p());
            assert!(grp.elements().contains(&id));
            for a in grp.elements() {
                assert!(grp.elements().contains(&a.inverse().unwrap()));
                for b in grp.elements() {
                    assert!(grp.elements().contains(&a.mul(b)));
                }
            }
            // Witness chains compose (left to right) to the group element.
            for (i, m) in grp.elements().iter().enumerate() {
                let prod = grp
                    .word(i)
                    .iter()
                    .fold(id.clone(), |acc, &gi| acc.mul(&grp.generators[gi].matrix));
                assert_eq!(&prod, m);
            }
        }
    }

    #[test]
    fn engel_conditions() {
        let ab = ring(Family::Abelian, 2, 3);
        assert!(is_k_engel(&ab, &ab.full_space(), 1, 100).unwrap());

        let h = ring(Family::Heisenberg, 3, 3);
        assert!(is_k_engel(&h, &h.full_space(), 2, 100).unwrap());
        assert!(!is_k_engel(&h, &h.full_space(), 1, 100).unwrap());

        let g = ring(Family::Affine2, 2, 5);
        let gp = g.derived_subring();
        assert!(!is_k_engel(&g, gp.space(), 1, 100).unwrap());
        assert!(is_k_engel(&g, gp.space(), 2, 100).unwrap());
    }
}
