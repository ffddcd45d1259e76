//! Whole-pipeline helpers: grid -> Hilbert series -> ordinal distribution ->
//! quantifiers, for one grid or many.

use serde::Serialize;

use crate::error::Result;
use crate::grid::ScalarGrid;
use crate::hilbert;
use crate::ordinal;
use crate::par;
use crate::quantifiers::{self, InfoTriple};
use crate::synth::{self, FbsSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Analysis {
    pub triple: InfoTriple,
    pub samples: u64,
    pub undersampled: bool,
}

pub fn analyze_grid(grid: &ScalarGrid, order: usize, delay: usize) -> Result<Analysis> {
    let seq = hilbert::unfold(grid);
    let dist = ordinal::build_distribution(&seq, order, delay)?;
    Ok(Analysis {
        triple: quantifiers::info_triple(&dist)?,
        samples: dist.samples(),
        undersampled: dist.undersampled(),
    })
}

/// Analyzes every grid, in parallel under the `parallel` feature. Results
/// keep the input order.
pub fn analyze_grids(grids: &[ScalarGrid], order: usize, delay: usize) -> Vec<Result<Analysis>> {
    par::map(grids, |g| analyze_grid(g, order, delay))
}

pub fn analyze_grids_seq(
    grids: &[ScalarGrid],
    order: usize,
    delay: usize,
) -> Vec<Result<Analysis>> {
    par::map_seq(grids, |g| analyze_grid(g, order, delay))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleMember {
    pub spec: FbsSpec,
    pub analysis: Analysis,
}

/// Generates and analyzes one fBs per `(hurst, seed)` pair, ordered by hurst
/// then seed.
pub fn fbs_ensemble(
    hursts: &[f64],
    seeds: &[u64],
    level: u32,
    order: usize,
    delay: usize,
) -> Result<Vec<EnsembleMember>> {
    let specs: Vec<FbsSpec> = hursts
        .iter()
        .flat_map(|&hurst| {
            seeds
                .iter()
                .map(move |&seed| FbsSpec { hurst, level, seed })
        })
        .collect();
    par::map(&specs, |spec| {
        let grid = synth::brownian_surface(spec)?;
        Ok(EnsembleMember {
            spec: spec.clone(),
            analysis: analyze_grid(&grid, order, delay)?,
        })
    })
    .into_iter()
    .collect()
}
