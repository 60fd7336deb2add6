//! Subspaces of F_p^n with a canonical reduced-echelon basis, plus the
//! guarded lattice enumerations the rest of the crate is built on.
//!
//! Two subspaces are equal exactly when their canonical bases agree
//! entry-wise, and the derived ordering is used everywhere a deterministic
//! tie-break is needed. Enumerations take an explicit guard and fail with
//! `GuardExceeded` instead of truncating: a truncated lattice scan would
//! silently turn a theorem check into a guess.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fp::FpMatrix;

/// A subspace of F_p^n, held as its canonical RREF row basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    p: u64,
    basis: FpMatrix,
}

impl Subspace {
    /// The zero subspace of F_p^n.
    pub fn zero(ambient_dim: usize, p: u64) -> Self {
        Subspace {
            ambient_dim,
            p,
            basis: FpMatrix::zeros(0, ambient_dim, p),
        }
    }

    /// All of F_p^n.
    pub fn full(ambient_dim: usize, p: u64) -> Self {
        Subspace {
            ambient_dim,
            p,
            basis: FpMatrix::identity(ambient_dim, p),
        }
    }

    /// The span of the given vectors (entries must already be reduced mod p).
    pub fn from_rows(ambient_dim: usize, p: u64, rows: &[Vec<u64>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), ambient_dim, "spanning vector of wrong length");
        }
        let m = FpMatrix::from_rows_or_empty(p, ambient_dim, rows.to_vec());
        Subspace::from_matrix(m)
    }

    /// The span of the given integer vectors, reduced mod p.
    pub fn from_signed_rows(ambient_dim: usize, p: u64, rows: &[Vec<i64>]) -> Self {
        let m = FpMatrix::from_signed_rows(p, rows);
        if rows.is_empty() {
            return Subspace::zero(ambient_dim, p);
        }
        assert_eq!(m.cols(), ambient_dim);
        Subspace::from_matrix(m)
    }

    /// The row space of a matrix.
    pub fn from_matrix(m: FpMatrix) -> Self {
        let rr = m.rref();
        Subspace {
            ambient_dim: m.cols(),
            p: m.p(),
            basis: rr.reduced.take_rows(rr.rank),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The canonical basis matrix (dim × ambient_dim, RREF).
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u64>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> Vec<usize> {
        // Rows are in RREF, so the pivot of row i is its first nonzero entry.
        (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("zero row in canonical basis")
            })
            .collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        Ok(())
    }

    /// Reduce a vector against the basis: the result is zero iff v lies in
    /// the subspace, and in general has zero entries at all pivot columns.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots().iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient_dim {
                out[j] = crate::fp::sub_m(
                    out[j],
                    crate::fp::mul_m(c, self.basis.get(i, j), self.p),
                    self.p,
                );
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of v in the canonical basis, or None if v is outside.
    pub fn coordinates_of(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        // With a RREF basis the coordinate along row i is just v at its pivot.
        Some(self.pivots().iter().map(|&pc| v[pc]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_rows().iter().all(|r| other.contains(r))
    }

    /// Sum of subspaces: span of both bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::from_rows(self.ambient_dim, self.p, &rows))
    }

    /// A matrix A whose kernel is exactly this subspace: v ∈ U iff Av = 0.
    /// (Rows of A form a basis of the dual annihilator U^⊥.)
    pub fn annihilator(&self) -> FpMatrix {
        self.basis.kernel_basis()
    }

    /// Intersection, computed as the kernel of the stacked annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let stacked = FpMatrix::stack(&[&a, &b]);
        Ok(Subspace::from_matrix(stacked.kernel_basis()))
    }

    /// All p^dim vectors of the subspace, in coefficient-lexicographic order
    /// (for the full space this is lexicographic on coordinates).
    pub fn vectors(&self, guard: u64) -> Result<Vec<Vec<u64>>> {
        let total = (self.p as u128)
            .checked_pow(self.dim() as u32)
            .ok_or_else(|| Error::guard("vector enumeration", u128::MAX, guard))?;
        if total > guard as u128 {
            return Err(Error::guard("vector enumeration", total, guard));
        }
        let d = self.dim();
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; d];
        loop {
            let mut v = vec![0u64; self.ambient_dim];
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in 0..self.ambient_dim {
                    v[j] = crate::fp::add_m(
                        v[j],
                        crate::fp::mul_m(c, self.basis.get(i, j), self.p),
                        self.p,
                    );
                }
            }
            out.push(v);
            // Odometer increment, last coefficient fastest.
            let mut k = d;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                coeffs[k] += 1;
                if coeffs[k] < self.p {
                    break;
                }
                coeffs[k] = 0;
            }
        }
    }

    /// Nonzero vectors with first nonzero coordinate 1: one representative
    /// per projective point, in canonical order.
    pub fn projective_representatives(&self, guard: u64) -> Result<Vec<Vec<u64>>> {
        Ok(self
            .vectors(guard)?
            .into_iter()
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .collect())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Deterministic total order: ambient data, then dimension, then the
    /// canonical basis entries row-major.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, self.p, self.dim())
            .cmp(&(other.ambient_dim, other.p, other.dim()))
            .then_with(|| {
                for i in 0..self.dim() {
                    for j in 0..self.ambient_dim {
                        let c = self.basis.get(i, j).cmp(&other.basis.get(i, j));
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                }
                Ordering::Equal
            })
    }
}

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// F_p^n, computed exactly in u128.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    // Product of (p^{n-i} - 1) / (p^{i+1} - 1) for i in 0..k; evaluate as a
    // single numerator/denominator pair to keep divisions exact.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (p as u128).pow((n - i) as u32) - 1;
        den *= (p as u128).pow((i + 1) as u32) - 1;
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Total number of subspaces of F_p^n.
pub fn subspace_count(n: usize, p: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).sum()
}

/// Enumerate every subspace W with `containing` ⊆ W ⊆ F_p^n, each exactly
/// once, in canonical order (dimension, then pivot columns, then free
/// entries, all relative to the quotient by `containing`).
///
/// The count is known in advance from the Gaussian binomials, so the guard
/// is checked before any subspace is built.
pub fn enumerate_subspaces(
    ambient_dim: usize,
    p: u64,
    containing: &Subspace,
    guard: u64,
) -> Result<Vec<Subspace>> {
    assert_eq!(containing.ambient_dim(), ambient_dim);
    assert_eq!(containing.p(), p);
    let m = ambient_dim - containing.dim();
    let total = subspace_count(m, p);
    if total > guard as u128 {
        return Err(Error::guard("subspace enumeration", total, guard));
    }

    // Subspaces containing C correspond to subspaces of the quotient
    // F_p^n / C; coordinates of the quotient are the non-pivot columns of C.
    let c_pivots = containing.pivots();
    let mut is_pivot = vec![false; ambient_dim];
    for &c in &c_pivots {
        is_pivot[c] = true;
    }
    let free_cols: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();

    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=m {
        for pivot_cols in k_subsets(m, k) {
            enumerate_rref_fill(m, p, &pivot_cols, &mut |mat: &Vec<Vec<u64>>| {
                // Lift the quotient rows back into F_p^n through the section
                // that places quotient coordinate j at column free_cols[j].
                let mut rows = containing.basis_rows();
                for qrow in mat {
                    let mut v = vec![0u64; ambient_dim];
                    for (j, &col) in free_cols.iter().enumerate() {
                        v[col] = qrow[j];
                    }
                    rows.push(v);
                }
                out.push(Subspace::from_rows(ambient_dim, p, &rows));
            });
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

/// All k-element subsets of {0, .., m-1} in lexicographic order.
fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            if m - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(m, k, c + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// Enumerate all RREF matrices with the given pivot columns by running an
/// odometer over the free entries (positions right of the row's pivot and
/// outside pivot columns).
fn enumerate_rref_fill(
    m: usize,
    p: u64,
    pivot_cols: &[usize],
    emit: &mut dyn FnMut(&Vec<Vec<u64>>),
) {
    let k = pivot_cols.len();
    let mut is_pivot = vec![false; m];
    for &c in pivot_cols {
        is_pivot[c] = true;
    }
    let mut free_pos = Vec::new();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        for c in (pc + 1)..m {
            if !is_pivot[c] {
                free_pos.push((r, c));
            }
        }
    }
    let mut mat = vec![vec![0u64; m]; k];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        mat[r][pc] = 1;
    }
    let nf = free_pos.len();
    let mut vals = vec![0u64; nf];
    loop {
        for (i, &(r, c)) in free_pos.iter().enumerate() {
            mat[r][c] = vals[i];
        }
        emit(&mat);
        let mut i = nf;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < p {
                break;
            }
            vals[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize, n: usize) -> Vec<u64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn intersect_is_idempotent() {
        let u = Subspace::from_rows(3, 5, &[e(0, 3), e(2, 3)]);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn complementary_lines_meet_trivially() {
        let u = Subspace::from_rows(2, 3, &[e(0, 2)]);
        let v = Subspace::from_rows(2, 3, &[e(1, 2)]);
        assert!(u.intersect(&v).unwrap().is_zero());
    }

    #[test]
    fn plane_intersection_matches_vector_enumeration() {
        let u = Subspace::from_rows(3, 5, &[e(0, 3), e(1, 3)]);
        let v = Subspace::from_rows(3, 5, &[e(1, 3), e(2, 3)]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, Subspace::from_rows(3, 5, &[e(1, 3)]));
        // Oracle: intersect by scanning all 125 vectors.
        let all = Subspace::full(3, 5).vectors(200).unwrap();
        let by_scan: Vec<_> = all
            .into_iter()
            .filter(|x| u.contains(x) && v.contains(x))
            .collect();
        assert_eq!(by_scan.len(), 5);
        for x in by_scan {
            assert!(w.contains(&x));
        }
    }

    #[test]
    fn mismatched_spaces_error() {
        let u = Subspace::full(2, 3);
        let v = Subspace::full(2, 5);
        let w = Subspace::full(3, 3);
        assert!(u.intersect(&v).is_err());
        assert!(u.sum(&w).is_err());
    }

    #[test]
    fn enumeration_counts_f2_squared() {
        // {0}, three lines, the plane.
        let all = enumerate_subspaces(2, 2, &Subspace::zero(2, 2), 100).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all.iter().filter(|s| s.dim() == 1).count(), 3);
    }

    #[test]
    fn enumeration_from_full_space_is_singleton() {
        let full = Subspace::full(3, 3);
        let all = enumerate_subspaces(3, 3, &full, 100).unwrap();
        assert_eq!(all, vec![full]);
    }

    #[test]
    fn planes_of_f2_cubed() {
        let all = enumerate_subspaces(3, 2, &Subspace::zero(3, 2), 100).unwrap();
        assert_eq!(all.iter().filter(|s| s.dim() == 2).count(), 7);
        assert_eq!(gaussian_binomial(3, 2, 2), 7);
    }

    #[test]
    fn enumeration_respects_containment() {
        let line = Subspace::from_rows(3, 2, &[vec![1, 1, 0]]);
        let above = enumerate_subspaces(3, 2, &line, 100).unwrap();
        // Quotient is F_2^2: 5 subspaces.
        assert_eq!(above.len(), 5);
        for s in &above {
            assert!(line.is_subspace_of(s));
        }
        let mut dedup = above.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), above.len());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for &p in &[2u64, 3] {
            for n in 0..=4usize {
                let all = enumerate_subspaces(n, p, &Subspace::zero(n, p), 1_000_000).unwrap();
                assert_eq!(all.len() as u128, subspace_count(n, p));
                for k in 0..=n {
                    assert_eq!(
                        all.iter().filter(|s| s.dim() == k).count() as u128,
                        gaussian_binomial(n, k, p),
                        "n={n} k={k} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn vectors_of_zero_space_is_zero_vector() {
        let z = Subspace::zero(3, 3);
        assert_eq!(z.vectors(10).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn vectors_of_line_are_scalar_multiples() {
        let l = Subspace::from_rows(2, 3, &[vec![1, 2]]);
        let vs = l.vectors(10).unwrap();
        assert_eq!(vs, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn vector_guard_is_enforced() {
        let plane = Subspace::full(2, 5);
        let err = plane.vectors(10).unwrap_err();
        assert!(err.is_guard_exceeded(), "got {err:?}");
    }

    #[test]
    fn subspace_guard_is_enforced() {
        let err = enumerate_subspaces(4, 3, &Subspace::zero(4, 3), 10).unwrap_err();
        assert!(err.is_guard_exceeded());
    }

    #[test]
    fn coordinates_round_trip() {
        let u = Subspace::from_signed_rows(3, 5, &[vec![1, 0, 2], vec![0, 1, 3]]);
        for v in u.vectors(100).unwrap() {
            let c = u.coordinates_of(&v).unwrap();
            let mut rebuilt = vec![0u64; 3];
            for (i, &ci) in c.iter().enumerate() {
                for j in 0..3 {
                    rebuilt[j] = (rebuilt[j] + ci * u.basis().get(i, j)) % 5;
                }
            }
            assert_eq!(rebuilt, v);
        }
        assert!(u.coordinates_of(&[1, 1, 1]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
            let p = [2u64, 3, 5][(seed % 3) as usize];
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); s >> 33 };
            let rows_data: Vec<Vec<u64>> = (0..rows).map(|_| (0..cols).map(|_| next() % p).collect()).collect();
            let m = FpMatrix::from_rows_or_empty(p, cols, rows_data);
            let rr = m.rref();
            let k = m.kernel_basis();
            prop_assert_eq!(rr.rank + k.rows(), cols);
        }

        #[test]
        fn lattice_dimension_identity(seed in any::<u64>()) {
            let p = [2u64, 3, 5][(seed % 3) as usize];
            let n = 4usize;
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); s >> 33 };
            let mk = |next: &mut dyn FnMut() -> u64| {
                let r = (next() % 3) as usize;
                let rows: Vec<Vec<u64>> = (0..r).map(|_| (0..n).map(|_| next() % p).collect()).collect();
                Subspace::from_rows(n, p, &rows)
            };
            let u = mk(&mut next);
            let v = mk(&mut next);
            let sum = u.sum(&v).unwrap();
            let meet = u.intersect(&v).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
            prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&v));
            prop_assert!(u.is_subspace_of(&sum) && v.is_subspace_of(&sum));
        }
    }
}
