//! Exact computations with finite-dimensional Lie rings over prime fields.
//!
//! The crate provides exact linear algebra over F_p, structure-constant Lie
//! rings with their standard constructions (quotients, subrings, semidirect
//! extensions), Engel and Cartan subring computations, def-abnormal and
//! Frattini subring lattices, inner automorphism groups, a corpus of example
//! rings, and a verification harness that runs a battery of structural
//! checks over the corpus and reports per-ring verdicts.
//!
//! Everything is exact: enumerations are exhaustive and guarded, never
//! sampled or truncated.

pub mod abnormal;
pub mod construct;
pub mod corpus;
pub mod engel;
pub mod error;
pub mod format;
pub mod fp;
pub mod frattini;
pub mod harness;
pub mod inner;
pub mod ring;
pub mod subspace;

pub use error::{Error, Result};
pub use fp::{FpMatrix, FpScalar};
pub use ring::{IdealView, LieRing, StructureViolation, SubringView};
pub use subspace::Subspace;
