//! Derived constructions: quotient rings, subrings as rings in their own
//! right, semidirect extensions, direct sums, base changes, and the spin
//! test for module irreducibility.

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::ring::{IdealView, LieRing, SubringView};
use crate::subspace::Subspace;

/// Linear data of a quotient g → g/I: `projection` (m×n) sends ambient
/// coordinates to quotient coordinates, `section` (n×m) embeds the quotient
/// back on the complement of the ideal's pivot columns. projection ∘ section
/// is the identity of the quotient.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub projection: FpMatrix,
    pub section: FpMatrix,
}

impl QuotientMap {
    /// Image of an ambient subspace in quotient coordinates.
    pub fn project_space(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<u64>> = s
            .basis_rows()
            .iter()
            .map(|r| self.projection.mul_vec(r))
            .collect();
        Subspace::from_rows(self.projection.rows(), self.projection.p(), &rows)
    }

    /// Preimage of a quotient subspace: section lift plus the kernel of the
    /// projection (which is the ideal itself).
    pub fn lift_space(&self, s: &Subspace, ideal: &Subspace) -> Subspace {
        let mut rows: Vec<Vec<u64>> = s
            .basis_rows()
            .iter()
            .map(|r| self.section.mul_vec(r))
            .collect();
        rows.extend(ideal.basis_rows());
        Subspace::from_rows(self.section.rows(), self.section.p(), &rows)
    }
}

/// The quotient ring g/I on the complement of the ideal's pivot coordinates.
pub fn quotient(g: &LieRing, ideal: &IdealView<'_>) -> (LieRing, QuotientMap) {
    assert!(std::ptr::eq(ideal.parent(), g), "ideal of a different ring");
    let n = g.dim();
    let p = g.p();
    let i_space = ideal.space();
    let pivots = i_space.pivots();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free_cols: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let m = free_cols.len();

    let mut projection = FpMatrix::zeros(m, n, p);
    for c in 0..n {
        let reduced = i_space.reduce(&basis_vec(n, c));
        for (r, &fc) in free_cols.iter().enumerate() {
            projection.set(r, c, reduced[fc]);
        }
    }
    let mut section = FpMatrix::zeros(n, m, p);
    for (j, &fc) in free_cols.iter().enumerate() {
        section.set(fc, j, 1);
    }

    let mut table = Vec::with_capacity(m * m);
    for &ci in &free_cols {
        for &cj in &free_cols {
            let br = g.bracket(&basis_vec(n, ci), &basis_vec(n, cj));
            table.push(projection.mul_vec(&br));
        }
    }
    let name = format!("{}/<{}-dim ideal>", g.name(), i_space.dim());
    let q = LieRing::from_full_table(p, m, name, table).expect("quotient table is well-formed");
    (
        q,
        QuotientMap {
            projection,
            section,
        },
    )
}

/// A bracket-closed subspace as a ring on its own canonical basis. The
/// returned matrix has the basis rows of U: coordinates c in the subring
/// correspond to the ambient element c · B.
pub fn subring_as_ring(g: &LieRing, u: &SubringView<'_>) -> (LieRing, FpMatrix) {
    assert!(std::ptr::eq(u.parent(), g), "subring of a different ring");
    let space = u.space();
    let d = space.dim();
    let mut table = Vec::with_capacity(d * d);
    let rows = space.basis_rows();
    for a in &rows {
        for b in &rows {
            let br = g.bracket(a, b);
            let coords = space
                .coordinates_of(&br)
                .expect("bracket leaves a closed subspace");
            table.push(coords);
        }
    }
    let name = format!("{}|<{}-dim subring>", g.name(), d);
    let s = LieRing::from_full_table(g.p(), d, name, table).expect("subring table is well-formed");
    (s, space.basis().clone())
}

/// Semidirect extension of `base` by an abelian module of the given
/// dimension: basis vectors of the base act through `action`, which must be
/// a Lie homomorphism into the module endomorphisms.
pub fn semidirect(base: &LieRing, module_dim: usize, action: &[FpMatrix]) -> Result<LieRing> {
    let nb = base.dim();
    let p = base.p();
    if action.len() != nb {
        return Err(Error::InvalidSpec(format!(
            "need {} action matrices, got {}",
            nb,
            action.len()
        )));
    }
    for a in action {
        if a.rows() != module_dim || a.cols() != module_dim || a.p() != p {
            return Err(Error::InvalidSpec("action matrix shape mismatch".into()));
        }
    }
    // ρ([e_i, e_j]) = ρ(e_i)ρ(e_j) − ρ(e_j)ρ(e_i) on all base pairs.
    let rho = |x: &[u64]| -> FpMatrix {
        let mut acc = FpMatrix::zeros(module_dim, module_dim, p);
        for (i, a) in action.iter().enumerate() {
            if x[i] != 0 {
                acc = acc.add(&a.scale(x[i]));
            }
        }
        acc
    };
    for i in 0..nb {
        for j in (i + 1)..nb {
            let lhs = rho(base.basis_bracket(i, j));
            let comm = action[i]
                .mul(&action[j])
                .add(&action[j].mul(&action[i]).scale(p - 1));
            if lhs != comm {
                return Err(Error::InvalidAction(i, j));
            }
        }
    }

    let n = nb + module_dim;
    let mut brackets: Vec<(usize, usize, Vec<i64>)> = Vec::new();
    for i in 0..nb {
        for j in (i + 1)..nb {
            let mut v = vec![0i64; n];
            for (k, &c) in base.basis_bracket(i, j).iter().enumerate() {
                v[k] = c as i64;
            }
            brackets.push((i, j, v));
        }
        for j in 0..module_dim {
            // [e_i, m_j] = ρ(e_i) m_j, living in the module block.
            let mut v = vec![0i64; n];
            for k in 0..module_dim {
                v[nb + k] = action[i].get(k, j) as i64;
            }
            brackets.push((i, nb + j, v));
        }
    }
    let name = format!("{} ⋉ F_{}^{}", base.name(), p, module_dim);
    let g = LieRing::from_brackets(p, n, name, &brackets)?;
    debug_assert!(g.validate().is_ok());
    Ok(g)
}

/// Direct sum with block-diagonal bracket table.
pub fn direct_sum(a: &LieRing, b: &LieRing) -> Result<LieRing> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch(a.p(), b.p()));
    }
    let n = a.dim() + b.dim();
    let mut brackets = Vec::new();
    for i in 0..a.dim() {
        for j in (i + 1)..a.dim() {
            let mut v = vec![0i64; n];
            for (k, &c) in a.basis_bracket(i, j).iter().enumerate() {
                v[k] = c as i64;
            }
            brackets.push((i, j, v));
        }
    }
    for i in 0..b.dim() {
        for j in (i + 1)..b.dim() {
            let mut v = vec![0i64; n];
            for (k, &c) in b.basis_bracket(i, j).iter().enumerate() {
                v[a.dim() + k] = c as i64;
            }
            brackets.push((a.dim() + i, a.dim() + j, v));
        }
    }
    LieRing::from_brackets(a.p(), n, format!("{} ⊕ {}", a.name(), b.name()), &brackets)
}

/// Transport the structure constants along an invertible base change whose
/// rows are the new basis vectors in old coordinates.
pub fn change_basis(g: &LieRing, m: &FpMatrix) -> Result<LieRing> {
    let n = g.dim();
    assert_eq!(m.rows(), n);
    assert_eq!(m.cols(), n);
    let inv = m.inverse().ok_or(Error::SingularMatrix)?;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let br = g.bracket(m.row(i), m.row(j));
            // Old coordinates v relate to new coordinates c by v = c · M,
            // so c = v · M^{-1}; as a column computation this is (M^{-1})ᵀ v,
            // i.e. row k of the result is Σ_t v_t · inv[t][k].
            let mut c = vec![0u64; n];
            for k in 0..n {
                for (t, &vt) in br.iter().enumerate() {
                    c[k] =
                        crate::fp::add_m(c[k], crate::fp::mul_m(vt, inv.get(t, k), g.p()), g.p());
                }
            }
            table.push(c);
        }
    }
    LieRing::from_full_table(g.p(), n, format!("{}~", g.name()), table)
}

/// Close span{v} under all basis adjoints: the smallest g-invariant
/// subspace containing v.
pub fn submodule_spin(g: &LieRing, v: &[u64]) -> Subspace {
    let mut space = Subspace::from_rows(g.dim(), g.p(), &[v.to_vec()]);
    loop {
        let mut rows = space.basis_rows();
        let before = space.dim();
        for i in 0..g.dim() {
            for b in space.basis_rows() {
                rows.push(g.bracket(&g.basis_vec(i), &b));
            }
        }
        space = Subspace::from_rows(g.dim(), g.p(), &rows);
        if space.dim() == before {
            return space;
        }
    }
}

/// Spin test for irreducibility of a g-invariant subspace: V is irreducible
/// iff every nonzero v ∈ V generates all of V. One representative per
/// projective point suffices since submodules are closed under scaling.
/// The zero module counts as reducible.
pub fn is_irreducible_module(g: &LieRing, v: &Subspace) -> bool {
    debug_assert!(
        g.derived(&g.full_space(), v).is_subspace_of(v),
        "not g-invariant"
    );
    if v.is_zero() {
        return false;
    }
    let reps = v
        .projective_representatives(u64::MAX)
        .expect("projective enumeration of a module");
    reps.iter().all(|w| &submodule_spin(g, w) == v)
}

fn basis_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
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
    fn quotient_by_everything_is_the_zero_ring() {
        let g = ring(Family::Heisenberg, 3, 3);
        let i = g.ideal(g.full_space()).unwrap();
        let (q, _) = quotient(&g, &i);
        assert_eq!(q.dim(), 0);
        assert!(q.validate().is_ok());
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let g = ring(Family::Heisenberg, 3, 3);
        let z = g.center();
        let (q, map) = quotient(&g, &z);
        assert_eq!(q.dim(), 2);
        assert!(q.validate().is_ok());
        assert!(q.is_abelian(&q.full_space()));
        // projection ∘ section = id on the quotient.
        let comp = map.projection.mul(&map.section);
        assert_eq!(comp, FpMatrix::identity(2, 3));
    }

    #[test]
    fn borel_mod_center_matches_hand_projection() {
        let g = ring(Family::Borel, 2, 5);
        let z = g.center();
        assert_eq!(z.space().basis_rows(), vec![vec![1, 1, 0]]);
        let (q, _) = quotient(&g, &z);
        assert_eq!(q.dim(), 2);
        assert!(q.validate().is_ok());
        // Quotient basis comes from the non-pivot coordinates e22, e12 and
        // [e22, e12] = -e12, so the induced bracket is [f0, f1] = -f1.
        assert_eq!(q.basis_bracket(0, 1), &[0, 4]);
        assert!(!q.is_nilpotent(&q.full_space()));
        // Rescaling the first basis vector recovers the affine table.
        let m = FpMatrix::from_signed_rows(5, &[vec![-1, 0], vec![0, 1]]);
        let q2 = change_basis(&q, &m).unwrap();
        assert_eq!(q2.basis_bracket(0, 1), &[0, 1]);
    }

    #[test]
    fn subring_as_ring_restricts_the_table() {
        let g = ring(Family::Borel, 2, 5);
        let full = g.subring(g.full_space()).unwrap();
        let (same, _) = subring_as_ring(&g, &full);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(same.basis_bracket(i, j), g.basis_bracket(i, j));
            }
        }

        let diag = g
            .subring(Subspace::from_rows(3, 5, &[g.basis_vec(0), g.basis_vec(1)]))
            .unwrap();
        let (d, _) = subring_as_ring(&g, &diag);
        assert_eq!(d.dim(), 2);
        assert!(d.is_abelian(&d.full_space()));

        let h = ring(Family::Heisenberg, 3, 3);
        let u = h
            .subring(Subspace::from_rows(3, 3, &[h.basis_vec(0), h.basis_vec(2)]))
            .unwrap();
        let (s, _) = subring_as_ring(&h, &u);
        assert!(s.is_abelian(&s.full_space()));
    }

    #[test]
    fn nonclosed_subspace_is_rejected() {
        let h = ring(Family::Heisenberg, 3, 3);
        let plane = Subspace::from_rows(3, 3, &[h.basis_vec(0), h.basis_vec(1)]);
        assert!(matches!(h.subring(plane), Err(Error::NotASubring)));
    }

    #[test]
    fn trivial_action_gives_a_direct_sum() {
        let base = ring(Family::Abelian, 2, 3);
        let zero = FpMatrix::zeros(1, 1, 3);
        let g = semidirect(&base, 1, &[zero.clone(), zero]).unwrap();
        let ds = direct_sum(&base, &ring(Family::Abelian, 1, 3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.basis_bracket(i, j), ds.basis_bracket(i, j));
            }
        }
    }

    #[test]
    fn identity_action_rebuilds_the_affine_ring() {
        let base = ring(Family::Abelian, 1, 5);
        let id = FpMatrix::identity(1, 5);
        let g = semidirect(&base, 1, &[id]).unwrap();
        let aff = ring(Family::Affine2, 2, 5);
        assert_eq!(g.basis_bracket(0, 1), aff.basis_bracket(0, 1));
    }

    #[test]
    fn bad_action_is_rejected() {
        // On an affine base, ρ must kill the derived subring; the identity
        // on both basis vectors does not.
        let base = ring(Family::Affine2, 2, 5);
        let id = FpMatrix::identity(1, 5);
        assert!(matches!(
            semidirect(&base, 1, &[id.clone(), id]),
            Err(Error::InvalidAction(0, 1))
        ));
    }

    #[test]
    fn change_basis_preserves_structure() {
        let h = ring(Family::Heisenberg, 3, 3);
        let m = FpMatrix::from_signed_rows(3, &[vec![1, 1, 0], vec![0, 1, 2], vec![2, 0, 1]]);
        assert!(m.inverse().is_some());
        let h2 = change_basis(&h, &m).unwrap();
        assert!(h2.validate().is_ok());
        assert!(h2.is_nilpotent(&h2.full_space()));
        assert_eq!(
            h.lower_central_series(&h.full_space()).len(),
            h2.lower_central_series(&h2.full_space()).len()
        );
        let singular =
            FpMatrix::from_signed_rows(3, &[vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 1]]);
        assert!(matches!(
            change_basis(&h, &singular),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn spin_detects_reducible_modules() {
        let aff = ring(Family::Affine2, 2, 5);
        // g' = span{e1} is one-dimensional, hence irreducible.
        let gp = aff.derived_subring();
        assert!(is_irreducible_module(&aff, gp.space()));

        let two = direct_sum(&aff, &aff).unwrap();
        let v = Subspace::from_rows(4, 5, &[two.basis_vec(1), two.basis_vec(3)]);
        assert!(two.is_ideal_space(&v));
        assert!(!is_irreducible_module(&two, &v));
        assert_eq!(submodule_spin(&two, &two.basis_vec(1)).dim(), 1);
    }
}
