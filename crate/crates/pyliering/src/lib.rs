//! Python bindings for the liering toolkit: Lie rings and subspaces as
//! classes, plus module-level entry points for the family generators and
//! the verification suite.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;
use std::str::FromStr;

use liering::corpus::{self, Family, FamilySpec};
use liering::format::RingFile;
use liering::harness::{self, CheckId, Config};
use liering::ring::LieRing;
use liering::subspace::Subspace as CoreSubspace;
use liering::{abnormal, engel, frattini, inner};

fn to_py_err(e: liering::Error) -> PyErr {
    match e {
        liering::Error::GuardExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A subspace of F_p^n with its canonical reduced-echelon basis.
#[pyclass(name = "Subspace", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PySubspace {
    inner: CoreSubspace,
}

#[pymethods]
impl PySubspace {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    /// Canonical basis rows.
    fn basis(&self) -> Vec<Vec<u64>> {
        self.inner.basis_rows()
    }

    fn contains(&self, vector: Vec<u64>) -> PyResult<bool> {
        if vector.len() != self.inner.ambient_dim() {
            return Err(PyValueError::new_err("vector length mismatch"));
        }
        Ok(self.inner.contains(&vector))
    }

    fn is_subspace_of(&self, other: &PySubspace) -> bool {
        self.inner.is_subspace_of(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Subspace(p={}, ambient_dim={}, basis={:?})",
            self.inner.p(),
            self.inner.ambient_dim(),
            self.inner.basis_rows()
        )
    }
}

impl From<CoreSubspace> for PySubspace {
    fn from(inner: CoreSubspace) -> Self {
        PySubspace { inner }
    }
}

/// A structure-constant Lie ring over F_p.
#[pyclass(name = "LieRing", frozen)]
struct PyLieRing {
    inner: LieRing,
}

#[pymethods]
impl PyLieRing {
    /// Build a named family member: abelian, affine2, heisenberg,
    /// strictly_upper, borel, sl2, semidirect_scalar or random_soluble.
    #[classmethod]
    #[pyo3(signature = (family, p, n=3, seed=0))]
    fn family(
        _cls: &Bound<'_, PyType>,
        family: &str,
        p: u64,
        n: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let family = Family::from_str(family).map_err(to_py_err)?;
        let g = corpus::generate(&FamilySpec { family, n, p, seed }).map_err(to_py_err)?;
        Ok(PyLieRing { inner: g })
    }

    /// Parse a structure-constant JSON document.
    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        let g = RingFile::from_json(text)
            .and_then(|f| f.to_ring())
            .map_err(to_py_err)?;
        Ok(PyLieRing { inner: g })
    }

    fn to_json(&self) -> String {
        RingFile::from_ring(&self.inner).to_json()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    /// None when the axioms hold, otherwise a description of the first
    /// violation.
    fn validate(&self) -> Option<String> {
        self.inner.validate().err().map(|v| v.to_string())
    }

    fn bracket(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<Vec<u64>> {
        let x = self.inner.element(&x).map_err(to_py_err)?;
        let y = self.inner.element(&y).map_err(to_py_err)?;
        Ok(self.inner.bracket(&x, &y))
    }

    /// The matrix of y -> [x, y] as nested lists (rows).
    fn ad(&self, x: Vec<i64>) -> PyResult<Vec<Vec<u64>>> {
        let x = self.inner.element(&x).map_err(to_py_err)?;
        let m = self.inner.ad(&x);
        Ok((0..m.rows()).map(|i| m.row(i).to_vec()).collect())
    }

    fn center(&self) -> PySubspace {
        self.inner.center().into_space().into()
    }

    fn centralizer(&self, vectors: Vec<Vec<i64>>) -> PyResult<PySubspace> {
        let space = self.span(vectors)?;
        Ok(self.inner.centralizer(&space.inner).into())
    }

    fn normalizer(&self, subspace: &PySubspace) -> PySubspace {
        self.inner.normalizer(&subspace.inner).into()
    }

    /// Span of the given vectors as a subspace.
    fn span(&self, vectors: Vec<Vec<i64>>) -> PyResult<PySubspace> {
        for v in &vectors {
            if v.len() != self.inner.dim() {
                return Err(PyValueError::new_err("vector length mismatch"));
            }
        }
        Ok(CoreSubspace::from_signed_rows(self.inner.dim(), self.inner.p(), &vectors).into())
    }

    fn derived_series(&self) -> Vec<PySubspace> {
        self.inner
            .derived_series(&self.inner.full_space())
            .into_iter()
            .map(Into::into)
            .collect()
    }

    fn lower_central_series(&self) -> Vec<PySubspace> {
        self.inner
            .lower_central_series(&self.inner.full_space())
            .into_iter()
            .map(Into::into)
            .collect()
    }

    fn is_soluble(&self) -> bool {
        self.inner.is_soluble(&self.inner.full_space())
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent(&self.inner.full_space())
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian(&self.inner.full_space())
    }

    /// Engel set of an element with its stabilization index.
    fn engel_element(&self, x: Vec<i64>) -> PyResult<(PySubspace, usize)> {
        let x = self.inner.element(&x).map_err(to_py_err)?;
        let e = engel::engel_element(&self.inner, &x);
        Ok((e.space.into(), e.stabilization_index))
    }

    #[pyo3(signature = (subspace, guard=100_000))]
    fn engel_subring(&self, subspace: &PySubspace, guard: u64) -> PyResult<PySubspace> {
        Ok(engel::engel_subring(&self.inner, &subspace.inner, guard)
            .map_err(to_py_err)?
            .space
            .into())
    }

    #[pyo3(signature = (guard=100_000))]
    fn cartan_subring(&self, guard: u64) -> PyResult<PySubspace> {
        Ok(engel::cartan_subring(&self.inner, guard)
            .map_err(to_py_err)?
            .into_space()
            .into())
    }

    fn is_cartan(&self, subspace: &PySubspace) -> bool {
        self.inner.is_bracket_closed(&subspace.inner)
            && engel::is_cartan(&self.inner, &subspace.inner)
    }

    /// The ad-nilpotent set with its (subspace, ideal, nilpotent) flags.
    #[pyo3(signature = (guard=100_000))]
    fn fitting(&self, guard: u64) -> PyResult<(PySubspace, bool, bool, bool)> {
        let f = engel::fitting(&self.inner, guard).map_err(to_py_err)?;
        Ok((f.space.into(), f.is_subspace, f.is_ideal, f.is_nilpotent))
    }

    /// The Frattini subspace with its (ideal, nilpotent) flags.
    #[pyo3(signature = (guard=200_000))]
    fn frattini(&self, guard: u64) -> PyResult<(PySubspace, bool, bool)> {
        let f = frattini::frattini(&self.inner, guard).map_err(to_py_err)?;
        Ok((f.space.into(), f.is_ideal, f.is_nilpotent))
    }

    #[pyo3(signature = (guard=200_000))]
    fn subrings(&self, guard: u64) -> PyResult<Vec<PySubspace>> {
        Ok(
            abnormal::enumerate_subrings(&self.inner, &self.inner.zero_space(), guard)
                .map_err(to_py_err)?
                .into_iter()
                .map(|s| s.into_space().into())
                .collect(),
        )
    }

    #[pyo3(signature = (subspace, guard=200_000))]
    fn is_def_abnormal(&self, subspace: &PySubspace, guard: u64) -> PyResult<bool> {
        Ok(
            abnormal::is_def_abnormal(&self.inner, &subspace.inner, guard)
                .map_err(to_py_err)?
                .verdict,
        )
    }

    #[pyo3(signature = (guard=200_000))]
    fn minimal_def_abnormal(&self, guard: u64) -> PyResult<Vec<PySubspace>> {
        Ok(abnormal::minimal_def_abnormal(&self.inner, guard)
            .map_err(to_py_err)?
            .into_iter()
            .map(|s| s.into_space().into())
            .collect())
    }

    /// exp(ad_x) as a matrix (rows), for ad-nilpotent x of index <= p.
    fn exp_ad(&self, x: Vec<i64>) -> PyResult<Vec<Vec<u64>>> {
        let x = self.inner.element(&x).map_err(to_py_err)?;
        let a = inner::exp_ad(&self.inner, &x).map_err(to_py_err)?;
        Ok((0..a.matrix.rows())
            .map(|i| a.matrix.row(i).to_vec())
            .collect())
    }

    /// Run one named check (validate, T1..T12); returns the outcome as a
    /// JSON string with verdict, detail and witness.
    #[pyo3(signature = (check, guard=200_000))]
    fn run_check(&self, check: &str, guard: u64) -> PyResult<String> {
        let id = CheckId::from_str(check).map_err(to_py_err)?;
        let cfg = Config {
            subspace_guard: guard,
            element_guard: guard.min(100_000),
            group_cap: guard.min(100_000),
        };
        Ok(harness::run_check(&self.inner, id, &cfg).to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "LieRing(name={:?}, p={}, dim={})",
            self.inner.name(),
            self.inner.p(),
            self.inner.dim()
        )
    }
}

/// Run the verification suite over the builtin corpus; returns the JSON
/// report.
#[pyfunction]
#[pyo3(signature = (primes=vec![3, 5, 7], max_dim=3, guard=200_000, seed=0))]
fn suite(primes: Vec<u64>, max_dim: usize, guard: u64, seed: u64) -> PyResult<String> {
    let cfg = Config {
        subspace_guard: guard,
        element_guard: guard.min(100_000),
        group_cap: guard.min(100_000),
    };
    let specs = corpus::builtin_corpus(&primes, max_dim, seed);
    let report = harness::verify_suite(&specs, &cfg).map_err(to_py_err)?;
    Ok(report.to_json())
}

/// Reproducible random soluble ring; returns the ring and its construction
/// log.
#[pyfunction]
#[pyo3(signature = (seed, max_dim=4, p=5))]
fn random_soluble(seed: u64, max_dim: usize, p: u64) -> PyResult<(PyLieRing, Vec<String>)> {
    let (g, log) = corpus::random_soluble(seed, max_dim, p).map_err(to_py_err)?;
    Ok((PyLieRing { inner: g }, log))
}

#[pymodule]
fn pyliering(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieRing>()?;
    m.add_class::<PySubspace>()?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    m.add_function(wrap_pyfunction!(random_soluble, m)?)?;
    Ok(())
}
