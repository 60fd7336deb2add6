//! The structure-constant file format: a JSON document with fields `p`,
//! `dim`, `name` and `brackets`, where `brackets` lists triples
//! `[i, j, coeffs]` for 0-based pairs i < j and `coeffs` is a length-`dim`
//! integer vector. Omitted pairs are zero; pairs below the diagonal are
//! implied by anti-symmetry.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::LieRing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub p: u64,
    pub dim: usize,
    pub name: String,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Vec<i64>)>,
}

impl RingFile {
    /// Extract the upper-pair table of a ring; zero brackets are omitted.
    pub fn from_ring(g: &LieRing) -> RingFile {
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in (i + 1)..g.dim() {
                let coeffs = g.basis_bracket(i, j);
                if coeffs.iter().any(|&c| c != 0) {
                    brackets.push((i, j, coeffs.iter().map(|&c| c as i64).collect()));
                }
            }
        }
        RingFile {
            p: g.p(),
            dim: g.dim(),
            name: g.name().to_string(),
            brackets,
        }
    }

    /// Build the ring. Structural sanity of the indices is checked here;
    /// the Lie axioms are the business of `LieRing::validate`.
    pub fn to_ring(&self) -> Result<LieRing> {
        LieRing::from_brackets(self.p, self.dim, self.name.clone(), &self.brackets)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring files serialize")
    }

    pub fn from_json(text: &str) -> Result<RingFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<RingFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidFile(format!("{}: {e}", path.display())))?;
        RingFile::from_json(&text)
    }
}

/// Read and build in one step.
pub fn load_ring(path: &Path) -> Result<LieRing> {
    RingFile::read(path)?.to_ring()
}
