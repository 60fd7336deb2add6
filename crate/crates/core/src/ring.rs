//! Structure-constant Lie rings over F_p: the bracket, adjoint maps,
//! centralizers and normalizers, derived and lower central series, and
//! generated subrings and ideals.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::{self, FpMatrix};
use crate::subspace::Subspace;

/// A finite-dimensional Lie ring over F_p, given by the coordinates of
/// [e_i, e_j] for every ordered basis pair.
///
/// Construction does not force the axioms: `validate` reports the first
/// alternating/anti-symmetry/Jacobi violation, which is itself one of the
/// operations this crate exposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRing {
    p: u64,
    dim: usize,
    name: String,
    /// Row-major pair table: entry `i * dim + j` holds [e_i, e_j].
    table: Vec<Vec<u64>>,
}

/// First axiom violation found by `validate`, with the offending basis tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    /// [e_i, e_i] != 0.
    Alternating { i: usize },
    /// [e_j, e_i] != -[e_i, e_j].
    AntiSymmetry { i: usize, j: usize },
    /// [e_i,[e_j,e_k]] != [[e_i,e_j],e_k] + [e_j,[e_i,e_k]], with the defect.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        defect: Vec<u64>,
    },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::Alternating { i } => {
                write!(f, "alternating law fails: [e{i}, e{i}] != 0")
            }
            StructureViolation::AntiSymmetry { i, j } => {
                write!(f, "anti-symmetry fails at pair ({i}, {j})")
            }
            StructureViolation::Jacobi { i, j, k, defect } => {
                write!(
                    f,
                    "Jacobi identity fails at triple ({i}, {j}, {k}), defect {defect:?}"
                )
            }
        }
    }
}

impl LieRing {
    /// Build from bracket data on pairs i < j; the rest of the table is
    /// filled in by anti-symmetry and the diagonal is zero.
    pub fn from_brackets(
        p: u64,
        dim: usize,
        name: impl Into<String>,
        brackets: &[(usize, usize, Vec<i64>)],
    ) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut table = vec![vec![0u64; dim]; dim * dim];
        for (i, j, coeffs) in brackets {
            if *i >= *j || *j >= dim {
                return Err(Error::InvalidFile(format!(
                    "bracket pair ({i}, {j}) is not an increasing pair below dim {dim}"
                )));
            }
            if coeffs.len() != dim {
                return Err(Error::InvalidFile(format!(
                    "bracket coefficient vector for ({i}, {j}) has length {}, expected {dim}",
                    coeffs.len()
                )));
            }
            let v: Vec<u64> = coeffs.iter().map(|&c| fp::reduce_i64(c, p)).collect();
            let neg: Vec<u64> = v.iter().map(|&c| fp::neg_m(c, p)).collect();
            table[i * dim + j] = v;
            table[j * dim + i] = neg;
        }
        Ok(LieRing {
            p,
            dim,
            name: name.into(),
            table,
        })
    }

    /// Build from a full pair table (row-major, `dim * dim` coordinate
    /// vectors). No structural constraints are imposed; pair with `validate`.
    pub fn from_full_table(
        p: u64,
        dim: usize,
        name: impl Into<String>,
        table: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidFile("table shape mismatch".into()));
        }
        let table = table
            .into_iter()
            .map(|v| v.into_iter().map(|c| c % p).collect())
            .collect();
        Ok(LieRing {
            p,
            dim,
            name: name.into(),
            table,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// [e_i, e_j] as stored.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i * self.dim + j]
    }

    /// Check the alternating law, anti-symmetry and the Jacobi identity on
    /// all basis tuples, reporting the first violation.
    pub fn validate(&self) -> std::result::Result<(), StructureViolation> {
        for i in 0..self.dim {
            if self.basis_bracket(i, i).iter().any(|&c| c != 0) {
                return Err(StructureViolation::Alternating { i });
            }
        }
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let ij = self.basis_bracket(i, j);
                let ji = self.basis_bracket(j, i);
                if (0..self.dim).any(|k| fp::add_m(ij[k], ji[k], self.p) != 0) {
                    return Err(StructureViolation::AntiSymmetry { i, j });
                }
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.bracket(&self.basis_vec(i), self.basis_bracket(j, k));
                    let a = self.bracket(self.basis_bracket(i, j), &self.basis_vec(k));
                    let b = self.bracket(&self.basis_vec(j), self.basis_bracket(i, k));
                    let defect: Vec<u64> = (0..self.dim)
                        .map(|t| fp::sub_m(lhs[t], fp::add_m(a[t], b[t], self.p), self.p))
                        .collect();
                    if defect.iter().any(|&c| c != 0) {
                        return Err(StructureViolation::Jacobi { i, j, k, defect });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero_vec(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    /// Reduce signed coordinates into a ring element, checking the length.
    pub fn element(&self, coords: &[i64]) -> Result<Vec<u64>> {
        if coords.len() != self.dim {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        Ok(coords.iter().map(|&c| fp::reduce_i64(c, self.p)).collect())
    }

    /// Bilinear expansion of the bracket over the pair table.
    pub fn bracket(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.dim, "element length mismatch");
        assert_eq!(y.len(), self.dim, "element length mismatch");
        let mut out = vec![0u64; self.dim];
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let c = fp::mul_m(x[i], y[j], self.p);
                let t = self.basis_bracket(i, j);
                for k in 0..self.dim {
                    out[k] = fp::add_m(out[k], fp::mul_m(c, t[k], self.p), self.p);
                }
            }
        }
        out
    }

    /// The matrix of y ↦ [x, y] acting on column vectors.
    pub fn ad(&self, x: &[u64]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.dim, self.dim, self.p);
        for j in 0..self.dim {
            let col = self.bracket(x, &self.basis_vec(j));
            for i in 0..self.dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.dim, self.p)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.dim, self.p)
    }

    /// {y : [y, x] = 0}, the kernel of ad_x.
    pub fn centralizer_of_element(&self, x: &[u64]) -> Subspace {
        Subspace::from_matrix(self.ad(x).kernel_basis())
    }

    /// {y : [y, s] = 0 for every s in S}: the joint kernel of the adjoints
    /// of a basis of S.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return self.full_space();
        }
        let ads: Vec<FpMatrix> = s.basis_rows().iter().map(|r| self.ad(r)).collect();
        let refs: Vec<&FpMatrix> = ads.iter().collect();
        Subspace::from_matrix(FpMatrix::stack(&refs).kernel_basis())
    }

    /// {y : [y, U] ⊆ U}, as the kernel of the stacked maps A ∘ ad_{u_i}
    /// where A is the annihilator of U (so Av = 0 iff v ∈ U).
    pub fn normalizer(&self, u: &Subspace) -> Subspace {
        if u.is_zero() || u.is_full() {
            return self.full_space();
        }
        let ann = u.annihilator();
        let blocks: Vec<FpMatrix> = u
            .basis_rows()
            .iter()
            .map(|r| ann.mul(&self.ad(r)))
            .collect();
        let refs: Vec<&FpMatrix> = blocks.iter().collect();
        Subspace::from_matrix(FpMatrix::stack(&refs).kernel_basis())
    }

    /// The center Z(g) = C_g(g).
    pub fn center(&self) -> IdealView<'_> {
        IdealView {
            parent: self,
            space: self.centralizer(&self.full_space()),
        }
    }

    /// [U, V]: the span of brackets of basis pairs.
    pub fn derived(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for a in u.basis_rows() {
            for b in v.basis_rows() {
                rows.push(self.bracket(&a, &b));
            }
        }
        Subspace::from_rows(self.dim, self.p, &rows)
    }

    /// g' = [g, g] as an ideal.
    pub fn derived_subring(&self) -> IdealView<'_> {
        IdealView {
            parent: self,
            space: self.derived(&self.full_space(), &self.full_space()),
        }
    }

    /// U ⊇ [U,U] ⊇ [[U,U],[U,U]] ⊇ ..., listed until it stabilizes; the
    /// stable term appears once.
    pub fn derived_series(&self, u: &Subspace) -> Vec<Subspace> {
        let mut series = vec![u.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived(last, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// U ⊇ [U, U] ⊇ [U, [U, U]] ⊇ ..., until stable.
    pub fn lower_central_series(&self, u: &Subspace) -> Vec<Subspace> {
        let mut series = vec![u.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived(u, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_abelian(&self, u: &Subspace) -> bool {
        self.derived(u, u).is_zero()
    }

    pub fn is_soluble(&self, u: &Subspace) -> bool {
        self.derived_series(u).last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self, u: &Subspace) -> bool {
        self.lower_central_series(u).last().unwrap().is_zero()
    }

    pub fn is_bracket_closed(&self, u: &Subspace) -> bool {
        self.derived(u, u).is_subspace_of(u)
    }

    pub fn is_ideal_space(&self, u: &Subspace) -> bool {
        self.derived(&self.full_space(), u).is_subspace_of(u)
    }

    /// Least subspace containing the generators and closed under the
    /// bracket: iterate span-then-bracket to the fixpoint.
    pub fn subring_closure(&self, generators: &[Vec<u64>]) -> SubringView<'_> {
        let mut space = Subspace::from_rows(self.dim, self.p, generators);
        loop {
            let grown = space.sum(&self.derived(&space, &space)).unwrap();
            if grown == space {
                break;
            }
            space = grown;
        }
        SubringView {
            parent: self,
            space,
        }
    }

    /// Least ideal containing the generators.
    pub fn ideal_closure(&self, generators: &[Vec<u64>]) -> IdealView<'_> {
        let mut space = Subspace::from_rows(self.dim, self.p, generators);
        let full = self.full_space();
        loop {
            let grown = space.sum(&self.derived(&full, &space)).unwrap();
            if grown == space {
                break;
            }
            space = grown;
        }
        IdealView {
            parent: self,
            space,
        }
    }

    /// Wrap a bracket-closed subspace as a subring view.
    pub fn subring(&self, space: Subspace) -> Result<SubringView<'_>> {
        if !self.is_bracket_closed(&space) {
            return Err(Error::NotASubring);
        }
        Ok(SubringView {
            parent: self,
            space,
        })
    }

    /// Wrap an ideal subspace as an ideal view.
    pub fn ideal(&self, space: Subspace) -> Result<IdealView<'_>> {
        if !self.is_ideal_space(&space) {
            return Err(Error::NotAnIdeal);
        }
        Ok(IdealView {
            parent: self,
            space,
        })
    }

    /// The minimal nonzero ideals: inclusion-minimal among the ideal
    /// closures of single nonzero vectors (every minimal ideal is generated
    /// by any of its nonzero elements).
    pub fn minimal_ideals(&self, guard: u64) -> Result<Vec<IdealView<'_>>> {
        let reps = self.full_space().projective_representatives(guard)?;
        let mut closures: Vec<Subspace> = reps
            .iter()
            .map(|v| self.ideal_closure(std::slice::from_ref(v)).space)
            .collect();
        closures.sort();
        closures.dedup();
        let minimal: Vec<Subspace> = closures
            .iter()
            .filter(|c| {
                !closures
                    .iter()
                    .any(|o| o.dim() < c.dim() && o.is_subspace_of(c))
            })
            .cloned()
            .collect();
        Ok(minimal
            .into_iter()
            .map(|space| IdealView {
                parent: self,
                space,
            })
            .collect())
    }

    /// Ideals appearing in the derived and lower central series (with the
    /// zero ideal always included), deduplicated and in canonical order.
    pub fn series_ideals(&self) -> Vec<IdealView<'_>> {
        let full = self.full_space();
        let mut spaces = self.derived_series(&full);
        spaces.extend(self.lower_central_series(&full));
        spaces.push(self.zero_space());
        spaces.sort();
        spaces.dedup();
        spaces
            .into_iter()
            .map(|space| {
                debug_assert!(self.is_ideal_space(&space));
                IdealView {
                    parent: self,
                    space,
                }
            })
            .collect()
    }
}

/// A bracket-closed subspace of a Lie ring.
#[derive(Debug, Clone)]
pub struct SubringView<'g> {
    pub(crate) parent: &'g LieRing,
    pub(crate) space: Subspace,
}

impl<'g> SubringView<'g> {
    pub fn parent(&self) -> &'g LieRing {
        self.parent
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// A subspace with [g, space] ⊆ space.
#[derive(Debug, Clone)]
pub struct IdealView<'g> {
    pub(crate) parent: &'g LieRing,
    pub(crate) space: Subspace,
}

impl<'g> IdealView<'g> {
    pub fn parent(&self) -> &'g LieRing {
        self.parent
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}
