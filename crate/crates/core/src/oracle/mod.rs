//! Ground truth by exhaustive search: χ(G), b-colorings with a prescribed
//! number of colors, the b-spectrum and the b-continuity verdict.
//!
//! Every search here is exponential in the number of vertices. The
//! [`Oracle`] refuses graphs above its vertex cap (14 by default) instead
//! of running for hours; raise the cap explicitly for larger sparse inputs.

mod bsearch;
pub mod chromatic;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Coloring, ColoringError};
use crate::graph::{m_degree, Graph};

pub use bsearch::MAX_COLORS;
pub use chromatic::{complete_by_components, complete_partial, exact_chromatic, greedy_clique_bound};

pub const DEFAULT_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the exact-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub chi: usize,
    pub b: usize,
    pub m: usize,
    /// S_b(G), ascending.
    pub spectrum: Vec<usize>,
    #[serde(rename = "continuous")]
    pub is_continuous: bool,
    /// The first b-coloring found for each k in the spectrum.
    pub witnesses: BTreeMap<usize, Coloring>,
}

impl SpectrumReport {
    pub fn contains(&self, k: usize) -> bool {
        self.spectrum.binary_search(&k).is_ok()
    }

    /// Values in `[χ, b]` missing from the spectrum.
    pub fn gaps(&self) -> Vec<usize> {
        (self.chi..=self.b).filter(|&k| !self.contains(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle {
            cap: cap.min(MAX_COLORS),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_cap(&self, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.cap {
            return Err(OracleError::CapExceeded {
                n: g.n(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn chromatic_number(&self, g: &Graph) -> Result<usize, OracleError> {
        self.check_cap(g)?;
        Ok(exact_chromatic(g).0)
    }

    /// An optimal proper coloring. Any coloring with χ colors is a
    /// b-coloring: a class without b-vertex could be cleaned away.
    pub fn chromatic_coloring(&self, g: &Graph) -> Result<Coloring, OracleError> {
        self.check_cap(g)?;
        Ok(Coloring::new(g, exact_chromatic(g).1)?)
    }

    pub fn exists_b_coloring(&self, g: &Graph, k: usize) -> Result<Option<Coloring>, OracleError> {
        self.check_cap(g)?;
        let (chi, optimal) = exact_chromatic(g);
        self.search_from(g, k, chi, optimal)
    }

    fn search_from(
        &self,
        g: &Graph,
        k: usize,
        chi: usize,
        optimal: Vec<usize>,
    ) -> Result<Option<Coloring>, OracleError> {
        if k < chi.max(1) || k > m_degree(g) {
            return Ok(None);
        }
        if k == chi {
            return Ok(Some(Coloring::new(g, optimal)?));
        }
        match bsearch::BSearch::new(g, k).run() {
            Some(colors) => Ok(Some(Coloring::new(g, colors)?)),
            None => Ok(None),
        }
    }

    /// b(G) with a witness, scanning down from m(G).
    pub fn b_chromatic(&self, g: &Graph) -> Result<Option<(usize, Coloring)>, OracleError> {
        self.check_cap(g)?;
        let (chi, optimal) = exact_chromatic(g);
        for k in (chi.max(1)..=m_degree(g)).rev() {
            if let Some(c) = self.search_from(g, k, chi, optimal.clone())? {
                return Ok(Some((k, c)));
            }
        }
        Ok(None)
    }

    pub fn b_spectrum(&self, g: &Graph) -> Result<SpectrumReport, OracleError> {
        self.check_cap(g)?;
        let (chi, optimal) = exact_chromatic(g);
        let m = m_degree(g);
        let mut witnesses = BTreeMap::new();
        for k in chi.max(1)..=m {
            if let Some(c) = self.search_from(g, k, chi, optimal.clone())? {
                witnesses.insert(k, c);
            }
        }
        let spectrum: Vec<usize> = witnesses.keys().copied().collect();
        let b = spectrum.last().copied().unwrap_or(0);
        let is_continuous = spectrum.is_empty() || spectrum.len() == b + 1 - chi;
        Ok(SpectrumReport {
            chi,
            b,
            m,
            is_continuous,
            spectrum,
            witnesses,
        })
    }
}
