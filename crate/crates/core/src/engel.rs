//! Engel subrings, ad-nilpotency, the Fitting subring, and Cartan subrings
//! computed through Engel-minimal search.

use crate::abnormal;
use crate::error::{Error, Result};
use crate::ring::{LieRing, SubringView};
use crate::subspace::Subspace;

/// What an Engel set was computed from.
#[derive(Debug, Clone)]
pub enum EngelBase {
    Element(Vec<u64>),
    Subring(Subspace),
}

/// An Engel set together with the index at which its kernel chain became
/// stationary (for the subring case, the largest index over the enumerated
/// elements).
#[derive(Debug, Clone)]
pub struct EngelSet {
    pub base: EngelBase,
    pub space: Subspace,
    pub stabilization_index: usize,
}

/// Least m >= 1 with ad_x^m = 0, or None when ad_x is not nilpotent.
/// An n×n nilpotent map dies by exponent n (or 1 in a zero-dimensional ring).
pub fn ad_nilpotency_index(g: &LieRing, x: &[u64]) -> Option<usize> {
    let ad = g.ad(x);
    let mut power = ad.clone();
    for m in 1..=g.dim().max(1) {
        if power.is_zero() {
            return Some(m);
        }
        power = power.mul(&ad);
    }
    None
}

pub fn is_ad_nilpotent(g: &LieRing, x: &[u64]) -> bool {
    ad_nilpotency_index(g, x).is_some()
}

/// E_g(x): the union of the iterated kernels of ad_x, which is the kernel at
/// the point the chain ker(ad_x) ⊆ ker(ad_x²) ⊆ ... becomes stationary.
pub fn engel_element(g: &LieRing, x: &[u64]) -> EngelSet {
    engel_element_in(g, &g.full_space(), x)
}

/// E restricted to a bracket-closed ambient subspace containing x: the
/// kernel chain intersected with the ambient.
pub fn engel_element_in(g: &LieRing, ambient: &Subspace, x: &[u64]) -> EngelSet {
    debug_assert!(ambient.contains(x), "element outside the ambient subring");
    let ad = g.ad(x);
    let mut chain: Vec<Subspace> = Vec::with_capacity(g.dim() + 2);
    let mut power = crate::fp::FpMatrix::identity(g.dim(), g.p());
    for _ in 0..=(g.dim() + 1) {
        let ker = Subspace::from_matrix(power.kernel_basis());
        chain.push(ker.intersect(ambient).expect("same ambient space"));
        power = power.mul(&ad);
    }
    let stab = (0..chain.len() - 1)
        .find(|&k| chain[k] == chain[k + 1])
        .expect("kernel chain is stationary by dimension count");
    // Once stationary, the chain must stay put; anything else would mean the
    // iterated kernels are not a single kernel.
    for k in stab..chain.len() - 1 {
        assert_eq!(chain[k], chain[k + 1], "kernel chain resumed growing");
    }
    let space = chain[stab].clone();
    assert!(
        g.is_bracket_closed(&space),
        "Engel set of an element is not bracket-closed; base {x:?} in {}",
        g.name()
    );
    EngelSet {
        base: EngelBase::Element(x.to_vec()),
        space,
        stabilization_index: stab,
    }
}

/// E_g(H) = ∩_{x ∈ H} E_g(x), intersecting over every element of H.
///
/// The Engel set of x is not linear in x, so a basis of H is not enough;
/// the enumeration is exhaustive and guarded.
pub fn engel_subring(g: &LieRing, h: &Subspace, guard: u64) -> Result<EngelSet> {
    if !g.is_bracket_closed(h) {
        return Err(Error::NotASubring);
    }
    let mut space = g.full_space();
    let mut stab = 0;
    for x in h.vectors(guard)? {
        let e = engel_element(g, &x);
        stab = stab.max(e.stabilization_index);
        space = space.intersect(&e.space)?;
    }
    debug_assert!(g.is_bracket_closed(&space));
    Ok(EngelSet {
        base: EngelBase::Subring(h.clone()),
        space,
        stabilization_index: stab,
    })
}

/// The exhaustive ad-nilpotent set with its verification flags.
///
/// `space` is the linear span of the set. When the set itself is a subspace
/// (always, for characteristic above the dimension) the flags report whether
/// it is an ideal and nilpotent; a subspace failure at large characteristic
/// is a counterexample, not an error, so it is reported the same way.
#[derive(Debug, Clone)]
pub struct FittingResult {
    pub space: Subspace,
    pub is_subspace: bool,
    pub is_ideal: bool,
    pub is_nilpotent: bool,
}

impl FittingResult {
    pub fn all_verified(&self) -> bool {
        self.is_subspace && self.is_ideal && self.is_nilpotent
    }
}

/// Collect the ad-nilpotent elements exhaustively and verify that they form
/// a nilpotent ideal.
pub fn fitting(g: &LieRing, guard: u64) -> Result<FittingResult> {
    let mut members: Vec<Vec<u64>> = Vec::new();
    for x in g.full_space().vectors(guard)? {
        if is_ad_nilpotent(g, &x) {
            members.push(x);
        }
    }
    let span = Subspace::from_rows(g.dim(), g.p(), &members);
    // The set always contains 0 and is closed under scaling, so it is a
    // subspace exactly when its size matches the size of its span.
    let is_subspace = members.len() as u128 == (g.p() as u128).pow(span.dim() as u32);
    let is_ideal = is_subspace && g.is_ideal_space(&span);
    let is_nilpotent = is_subspace && g.is_bracket_closed(&span) && g.is_nilpotent(&span);
    Ok(FittingResult {
        space: span,
        is_subspace,
        is_ideal,
        is_nilpotent,
    })
}

/// Memo table for element Engel sets, keyed by coordinates. Distinct
/// elements share few distinct Engel sets, so intersections are taken over
/// the deduplicated set indices rather than once per element.
#[derive(Default)]
pub struct EngelElementCache {
    index: std::collections::HashMap<Vec<u64>, usize>,
    spaces: Vec<Subspace>,
}

impl EngelElementCache {
    fn index_of(&mut self, g: &LieRing, x: Vec<u64>) -> usize {
        if let Some(&i) = self.index.get(&x) {
            return i;
        }
        let space = engel_element(g, &x).space;
        let i = self
            .spaces
            .iter()
            .position(|s| s == &space)
            .unwrap_or_else(|| {
                self.spaces.push(space);
                self.spaces.len() - 1
            });
        self.index.insert(x, i);
        i
    }

    /// E_g(h) through the cache; same result as `engel_subring`.
    pub fn engel_of_subring(&mut self, g: &LieRing, h: &Subspace, guard: u64) -> Result<Subspace> {
        if !g.is_bracket_closed(h) {
            return Err(Error::NotASubring);
        }
        let mut ids: Vec<usize> = h
            .vectors(guard)?
            .into_iter()
            .map(|x| self.index_of(g, x))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let mut space = g.full_space();
        for i in ids {
            space = space.intersect(&self.spaces[i])?;
        }
        Ok(space)
    }
}

/// Nilpotent and self-normalizing.
pub fn is_cartan(g: &LieRing, u: &Subspace) -> bool {
    debug_assert!(g.is_bracket_closed(u));
    g.is_nilpotent(u) && &g.normalizer(u) == u
}

/// Compute a Cartan subring by Engel-minimal search:
/// pick the canonically-first element minimizing dim E_g(x), then iterate
/// h ← E_g(h) to a fixpoint and verify the result is Cartan.
///
/// A verification failure is surfaced as an error carrying the candidate; it
/// is never retried silently.
pub fn cartan_subring(g: &LieRing, guard: u64) -> Result<SubringView<'_>> {
    let mut best: Option<(usize, Subspace)> = None;
    for x in g.full_space().vectors(guard)? {
        let e = engel_element(g, &x);
        let d = e.space.dim();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, e.space));
        }
    }
    let (_, mut h) = best.expect("vector enumeration yields at least 0");
    let mut seen = vec![h.clone()];
    loop {
        let next = engel_subring(g, &h, guard)?.space;
        if next == h {
            break;
        }
        if seen.contains(&next) {
            return Err(Error::VerificationFailed(format!(
                "Engel iteration cycles without a fixpoint on {}",
                g.name()
            )));
        }
        seen.push(next.clone());
        h = next;
    }
    if !is_cartan(g, &h) {
        return Err(Error::VerificationFailed(format!(
            "Engel-minimal candidate {:?} of {} is not a Cartan subring",
            h.basis_rows(),
            g.name()
        )));
    }
    g.subring(h)
}

/// Every Cartan subring, by filtering the full subring lattice.
pub fn cartan_subrings_exhaustive(g: &LieRing, guard: u64) -> Result<Vec<SubringView<'_>>> {
    Ok(abnormal::enumerate_subrings(g, &g.zero_space(), guard)?
        .into_iter()
        .filter(|u| is_cartan(g, u.space()))
        .collect())
}

/// The inclusion-minimal sets E_g(h) over all nilpotent subrings h,
/// deduplicated by canonical basis.
///
/// Element Engel sets are cached across the subring sweep: E_g(x) depends
/// only on x, and large lattices revisit the same elements constantly.
pub fn engel_minimal_subrings(g: &LieRing, guard: u64) -> Result<Vec<SubringView<'_>>> {
    let mut cache = EngelElementCache::default();
    let mut sets: Vec<Subspace> = Vec::new();
    for h in abnormal::enumerate_subrings(g, &g.zero_space(), guard)? {
        if !g.is_nilpotent(h.space()) {
            continue;
        }
        sets.push(cache.engel_of_subring(g, h.space(), guard)?);
    }
    sets.sort();
    sets.dedup();
    let minimal: Vec<Subspace> = sets
        .iter()
        .filter(|s| {
            !sets
                .iter()
                .any(|o| o.dim() < s.dim() && o.is_subspace_of(s))
        })
        .cloned()
        .collect();
    minimal.into_iter().map(|s| g.subring(s)).collect()
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
    fn ad_nilpotency_basics() {
        let g = ring(Family::Affine2, 2, 5);
        assert_eq!(ad_nilpotency_index(&g, &g.zero_vec()), Some(1));
        assert_eq!(ad_nilpotency_index(&g, &g.basis_vec(0)), None);
        assert_eq!(ad_nilpotency_index(&g, &g.basis_vec(1)), Some(2));

        let h = ring(Family::Heisenberg, 3, 3);
        for x in h.full_space().vectors(100).unwrap() {
            let idx = ad_nilpotency_index(&h, &x).expect("nilpotent ring");
            assert!(idx <= 2);
        }
    }

    #[test]
    fn engel_set_of_abelian_ring_is_everything() {
        let g = ring(Family::Abelian, 3, 5);
        for x in g.full_space().vectors(200).unwrap() {
            assert_eq!(engel_element(&g, &x).space, g.full_space());
        }
    }

    #[test]
    fn engel_sets_in_the_affine_ring() {
        let g = ring(Family::Affine2, 3, 3);
        let e = engel_element(&g, &g.basis_vec(0));
        assert_eq!(e.space, Subspace::from_rows(2, 3, &[g.basis_vec(0)]));
        assert_eq!(e.stabilization_index, 1);
        // E(e0 + λ e1) is exactly the line through its base point.
        for lam in 0..3u64 {
            let x = vec![1, lam];
            let e = engel_element(&g, &x);
            assert_eq!(e.space, Subspace::from_rows(2, 3, &[x.clone()]));
        }
        // Oracle: the iterated-kernel union by brute force over all vectors.
        for x in g.full_space().vectors(100).unwrap() {
            let e = engel_element(&g, &x);
            let ad = g.ad(&x);
            for v in g.full_space().vectors(100).unwrap() {
                let mut w = v.clone();
                let mut dies = false;
                for _ in 0..=2 {
                    if w.iter().all(|&c| c == 0) {
                        dies = true;
                        break;
                    }
                    w = ad.mul_vec(&w);
                }
                assert_eq!(e.space.contains(&v), dies);
            }
        }
    }

    #[test]
    fn engel_sets_restrict_to_an_ambient_subring() {
        let b = ring(Family::Borel, 2, 5);
        let diag = Subspace::from_rows(3, 5, &[b.basis_vec(0), b.basis_vec(1)]);
        // Inside the (abelian) diagonal every element has full Engel set.
        let e = engel_element_in(&b, &diag, &b.basis_vec(0));
        assert_eq!(e.space, diag);
        // In the full ring, E(e00) is already just the diagonal.
        assert_eq!(engel_element(&b, &b.basis_vec(0)).space, diag);

        // A case where intersecting matters: the center line inside the
        // Heisenberg ring versus the whole ring.
        let h = ring(Family::Heisenberg, 3, 3);
        let line = Subspace::from_rows(3, 3, &[h.basis_vec(2)]);
        let e = engel_element_in(&h, &line, &h.basis_vec(2));
        assert_eq!(e.space, line);
        assert_eq!(engel_element(&h, &h.basis_vec(2)).space, h.full_space());
    }

    #[test]
    fn engel_subring_of_zero_is_everything() {
        let g = ring(Family::Affine2, 2, 5);
        let e = engel_subring(&g, &g.zero_space(), 100).unwrap();
        assert_eq!(e.space, g.full_space());
    }

    #[test]
    fn engel_subring_fixpoints() {
        let g = ring(Family::Affine2, 2, 5);
        let line = Subspace::from_rows(2, 5, &[g.basis_vec(0)]);
        assert_eq!(engel_subring(&g, &line, 100).unwrap().space, line);

        let b = ring(Family::Borel, 2, 5);
        let diag = Subspace::from_rows(3, 5, &[b.basis_vec(0), b.basis_vec(1)]);
        assert_eq!(engel_subring(&b, &diag, 100).unwrap().space, diag);
    }

    #[test]
    fn engel_subring_rejects_unclosed_input() {
        let h = ring(Family::Heisenberg, 3, 3);
        let plane = Subspace::from_rows(3, 3, &[h.basis_vec(0), h.basis_vec(1)]);
        assert!(matches!(
            engel_subring(&h, &plane, 100),
            Err(Error::NotASubring)
        ));
    }

    #[test]
    fn fitting_of_nilpotent_ring_is_everything() {
        let h = ring(Family::Heisenberg, 3, 3);
        let f = fitting(&h, 100).unwrap();
        assert!(f.all_verified());
        assert_eq!(f.space, h.full_space());
    }

    #[test]
    fn fitting_of_affine_is_the_derived_line() {
        let g = ring(Family::Affine2, 2, 5);
        let f = fitting(&g, 100).unwrap();
        assert!(f.all_verified());
        assert_eq!(f.space, Subspace::from_rows(2, 5, &[g.basis_vec(1)]));
    }

    #[test]
    fn fitting_of_borel_is_scalars_plus_nilpotents() {
        // ad(a·e00 + b·e11 + c·e01) acts on e01 by (a-b), so it is nilpotent
        // exactly when the diagonal part is scalar.
        let g = ring(Family::Borel, 2, 5);
        let f = fitting(&g, 200).unwrap();
        assert!(f.all_verified());
        assert_eq!(
            f.space,
            Subspace::from_rows(3, 5, &[vec![1, 1, 0], vec![0, 0, 1]])
        );
    }

    #[test]
    fn cartan_of_nilpotent_ring_is_the_whole_ring() {
        let h = ring(Family::Heisenberg, 3, 3);
        let c = cartan_subring(&h, 1000).unwrap();
        assert_eq!(c.space(), &h.full_space());
        assert!(is_cartan(&h, c.space()));
    }

    #[test]
    fn cartan_of_affine_is_the_first_complement_line() {
        let g = ring(Family::Affine2, 2, 5);
        let c = cartan_subring(&g, 1000).unwrap();
        assert_eq!(c.space(), &Subspace::from_rows(2, 5, &[g.basis_vec(0)]));
        assert!(is_cartan(&g, c.space()));
        assert!(!is_cartan(
            &g,
            &Subspace::from_rows(2, 5, &[g.basis_vec(1)])
        ));
    }

    #[test]
    fn cartan_of_borel_is_the_diagonal() {
        for p in [3u64, 5] {
            let g = ring(Family::Borel, 2, p);
            let c = cartan_subring(&g, 1000).unwrap();
            let diag = Subspace::from_rows(3, p, &[g.basis_vec(0), g.basis_vec(1)]);
            assert_eq!(c.space(), &diag);
        }
    }

    #[test]
    fn engel_minimal_sets() {
        let ab = ring(Family::Abelian, 2, 3);
        let m = engel_minimal_subrings(&ab, 1000).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].space(), &ab.full_space());

        // The three lines through e0 + λ e1.
        let g = ring(Family::Affine2, 2, 3);
        let m = engel_minimal_subrings(&g, 1000).unwrap();
        let expected: Vec<Subspace> = (0..3u64)
            .map(|lam| Subspace::from_rows(2, 3, &[vec![1, lam]]))
            .collect();
        let got: Vec<Subspace> = m.iter().map(|s| s.space().clone()).collect();
        assert_eq!(got.len(), 3);
        for e in expected {
            assert!(got.contains(&e));
        }

        // Engel-minimal sets of the Borel ring are exactly its Cartan
        // subrings (the diagonal and its shears).
        let b = ring(Family::Borel, 2, 5);
        let mut m: Vec<Subspace> = engel_minimal_subrings(&b, 2000)
            .unwrap()
            .into_iter()
            .map(|s| s.into_space())
            .collect();
        let mut cartans: Vec<Subspace> = cartan_subrings_exhaustive(&b, 2000)
            .unwrap()
            .into_iter()
            .map(|s| s.into_space())
            .collect();
        m.sort();
        cartans.sort();
        assert_eq!(m, cartans);
        assert_eq!(m.len(), 5);
        let diag = Subspace::from_rows(3, 5, &[b.basis_vec(0), b.basis_vec(1)]);
        assert!(m.contains(&diag));
    }
}
